"""Adapter exposing Newspaper3k's Article.authors list.

The article is fed pre-fetched HTML through ``download(input_html=...)``
so no network access ever happens; the URL only seeds the Article
object, which refuses to construct without one.
"""

from __future__ import annotations

from .serve import run

NAME = "newspaper3k"
PINNED_VERSION = "0.2.8"


def extract_authors(html: str, url: str, language: str) -> list:
    from newspaper import Article

    article = Article(url)
    article.download(input_html=html)
    article.parse()
    return article.authors


def main() -> None:
    run(NAME, extract_authors)


if __name__ == "__main__":
    main()
