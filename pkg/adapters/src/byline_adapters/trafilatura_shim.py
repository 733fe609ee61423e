"""Adapter exposing Trafilatura's metadata author field.

Trafilatura reports all authors of a page as one string on the
metadata document (multiple names joined by its own convention), so a
response carries that string as a single list element, untouched.
"""

from __future__ import annotations

from .serve import run

NAME = "trafilatura"
PINNED_VERSION = "1.6.1"


def extract_authors(html: str, url: str, language: str) -> str | None:
    import trafilatura.metadata

    metadata = trafilatura.metadata.extract_metadata(html, default_url=url)
    if metadata is None:
        return None
    return getattr(metadata, "author", None)


def main() -> None:
    run(NAME, extract_authors)


if __name__ == "__main__":
    main()
