"""Adapter exposing ExtractNet's author predictions.

ExtractNet loads model weights on first use, so one Extractor instance
is built lazily and reused for every request the process handles.  Its
"author" field holds either plain strings or {"name": ..., "score": ...}
records depending on the pipeline stage; both shapes are accepted and
the name strings passed through unchanged.
"""

from __future__ import annotations

from .serve import run

NAME = "extractnet"
PINNED_VERSION = "2.0.7"

_extractor = None


def _pipeline():
    global _extractor
    if _extractor is None:
        from extractnet import Extractor

        _extractor = Extractor()
    return _extractor


def extract_authors(html: str, url: str, language: str) -> list | None:
    results = _pipeline().extract(html)
    if not isinstance(results, dict):
        return None
    value = results.get("author")
    if isinstance(value, (list, tuple)):
        names = []
        for item in value:
            if isinstance(item, dict):
                item = item.get("name")
            if isinstance(item, str):
                names.append(item)
        return names
    return value


def main() -> None:
    run(NAME, extract_authors)


if __name__ == "__main__":
    main()
