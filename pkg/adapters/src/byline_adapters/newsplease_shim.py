"""Adapter exposing news-please's NewsArticle.authors list.

news-please also ships a crawler pipeline that wants full download
context; this shim deliberately uses the offline ``NewsPlease.from_html``
entry point, which parses a raw HTML string plus a URL and nothing else.
"""

from __future__ import annotations

from .serve import run

NAME = "news-please"
PINNED_VERSION = "1.5.33"


def extract_authors(html: str, url: str, language: str) -> list | None:
    from newsplease import NewsPlease

    article = NewsPlease.from_html(html, url=url)
    if article is None:
        return None
    return getattr(article, "authors", None)


def main() -> None:
    run(NAME, extract_authors)


if __name__ == "__main__":
    main()
