"""Unicode text helpers shared by metric preprocessing and author cleaning."""
from __future__ import annotations

import unicodedata

__all__ = ["nfc", "is_punctuation", "strip_outer", "collapse_whitespace"]


def nfc(text: str) -> str:
    """Normalize to NFC so combining-character encodings compare equal."""
    return unicodedata.normalize("NFC", text)


def is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def strip_outer(text: str) -> str:
    """Strip whitespace and punctuation from both ends.

    Interior punctuation (hyphens, apostrophes, initials' periods) is
    name-bearing and stays untouched.
    """
    start, end = 0, len(text)
    while start < end and (text[start].isspace() or is_punctuation(text[start])):
        start += 1
    while end > start and (text[end - 1].isspace() or is_punctuation(text[end - 1])):
        end -= 1
    return text[start:end]


def collapse_whitespace(text: str) -> str:
    """Collapse every whitespace run (including newlines) to a single space."""
    return " ".join(text.split())
