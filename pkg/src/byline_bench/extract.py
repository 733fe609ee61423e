"""Author-extraction cascade over news HTML.

Six strategies run in strict precedence order, most reliable first:

1. JSON-LD article metadata (``jsonld``)
2. author meta tags (``meta_tag``)
3. ``rel="author"`` links (``rel_author``)
4. byline-ish class/id/itemprop containers (``class_heuristic``)
5. cue-word regex over the visible page head (``byline_regex``)
6. named-entity fallback, if a provider is supplied (``ner_fallback``)

The first stage producing at least one cleaned author wins and is recorded
as the result's method. Structured metadata outranks markup heuristics
because publishers emit it deliberately; free-text pattern matching and
NER are last because they guess.
"""
from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING, Iterable

from .htmldom import Element, parse
from .patterns import UNSPACED_LANGUAGES, DEFAULT_CONFIG, ExtractorConfig
from .textnorm import collapse_whitespace, nfc, strip_outer

if TYPE_CHECKING:
    from .ner import NERProvider

__all__ = [
    "Method",
    "ExtractionResult",
    "EMPTY_RESULT",
    "extract",
    "extract_jsonld",
    "extract_meta_tags",
    "extract_rel_author",
    "extract_class_heuristics",
    "extract_byline_regex",
    "clean_author_string",
]


class Method(str, Enum):
    """Which cascade stage produced the authors."""

    JSONLD = "jsonld"
    META_TAG = "meta_tag"
    REL_AUTHOR = "rel_author"
    CLASS_HEURISTIC = "class_heuristic"
    BYLINE_REGEX = "byline_regex"
    NER_FALLBACK = "ner_fallback"
    EXTERNAL = "external"
    NONE = "none"


@dataclass(frozen=True)
class ExtractionResult:
    """Cleaned authors plus provenance.

    ``raw`` keeps the uncleaned source strings the authors came from, for
    debugging and error analysis.
    """

    authors: tuple[str, ...]
    method: Method
    raw: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if (self.method is Method.NONE) != (len(self.authors) == 0):
            raise ValueError(
                f"method {self.method.value!r} inconsistent with {len(self.authors)} author(s)"
            )
        seen = set()
        for author in self.authors:
            if not author or author != author.strip():
                raise ValueError(f"author string {author!r} empty or untrimmed")
            if author in seen:
                raise ValueError(f"duplicate author {author!r}")
            seen.add(author)


EMPTY_RESULT = ExtractionResult(authors=(), method=Method.NONE, raw=())

_ARTICLE_TYPES = frozenset({"NewsArticle", "Article", "BlogPosting"})

_URL_RE = re.compile(r"^https?://", re.IGNORECASE)


def _as_root(html: str | Element) -> Element:
    return html if isinstance(html, Element) else parse(html)


def _collect_jsonld_authors(value: object, out: list[str]) -> None:
    if isinstance(value, str):
        text = collapse_whitespace(value)
        if text:
            out.append(text)
    elif isinstance(value, dict):
        _collect_jsonld_authors(value.get("name"), out)
    elif isinstance(value, list):
        for item in value:
            _collect_jsonld_authors(item, out)


def _walk_jsonld(node: object, out: list[str]) -> None:
    if isinstance(node, list):
        for item in node:
            _walk_jsonld(item, out)
        return
    if not isinstance(node, dict):
        return
    node_type = node.get("@type")
    types = [node_type] if isinstance(node_type, str) else node_type if isinstance(node_type, list) else []
    if any(t in _ARTICLE_TYPES for t in types if isinstance(t, str)):
        _collect_jsonld_authors(node.get("author"), out)
    for key, value in node.items():
        if key != "author" and isinstance(value, (dict, list)):
            _walk_jsonld(value, out)


def extract_jsonld(html: str | Element, diagnostics: Counter | None = None) -> list[str]:
    """Raw author strings from ``application/ld+json`` blocks.

    Walks NewsArticle/Article/BlogPosting objects anywhere in each block,
    ``@graph`` containers included; an ``author`` may be a string, an
    object with a ``name``, or a list of either. Malformed JSON blocks are
    skipped, counted under ``jsonld_malformed`` when a diagnostics counter
    is passed.
    """
    root = _as_root(html)
    authors: list[str] = []
    for script in root.find_all("script"):
        if script.attr("type").split(";")[0].strip().lower() != "application/ld+json":
            continue
        try:
            data = json.loads(script.raw_text())
        except ValueError:
            if diagnostics is not None:
                diagnostics["jsonld_malformed"] += 1
            continue
        _walk_jsonld(data, authors)
    return authors


def extract_meta_tags(html: str | Element, names: tuple[str, ...] = DEFAULT_CONFIG.meta_names) -> list[str]:
    """Raw author strings from ``<meta>`` tags, document order.

    Matches the name or property attribute against the configured list,
    case-insensitively. Twitter creator handles (values starting with
    ``@``) and URL-valued content are excluded since they are identifiers,
    not names. Duplicates differing only in case are collapsed to the
    first occurrence.
    """
    root = _as_root(html)
    wanted = {n.lower() for n in names}
    authors: list[str] = []
    seen: set[str] = set()
    for meta in root.find_all("meta"):
        key = (meta.attr("name") or meta.attr("property")).strip().lower()
        if key not in wanted:
            continue
        content = collapse_whitespace(meta.attr("content"))
        if not content or _URL_RE.match(content):
            continue
        if key == "twitter:creator" and content.startswith("@"):
            continue
        folded = content.casefold()
        if folded not in seen:
            seen.add(folded)
            authors.append(content)
    return authors


def extract_rel_author(html: str | Element) -> list[str]:
    """Visible text of ``rel="author"`` anchors, document order."""
    root = _as_root(html)
    authors: list[str] = []
    seen: set[str] = set()
    for anchor in root.find_all("a"):
        rel_tokens = anchor.attr("rel").lower().split()
        if "author" not in rel_tokens:
            continue
        text = collapse_whitespace(anchor.visible_text())
        folded = text.casefold()
        if text and folded not in seen:
            seen.add(folded)
            authors.append(text)
    return authors


def extract_class_heuristics(
    html: str | Element, config: ExtractorConfig = DEFAULT_CONFIG
) -> list[str]:
    """Visible text of elements whose class/id/itemprop/rel mention a
    byline token, innermost elements first.

    Candidates longer than ``config.candidate_max_chars`` are discarded:
    a matching container holding a 500-character biography is a bio box,
    not a byline.
    """
    root = _as_root(html)
    tokens = tuple(t.lower() for t in config.class_tokens)
    authors: list[str] = []
    seen: set[str] = set()
    for element in root.iter_elements():
        if element.tag in ("document", "script", "style", "meta", "link", "html", "head", "body"):
            continue
        attr_blob = " ".join(
            element.attr(name) for name in ("class", "id", "itemprop", "rel")
        ).lower()
        if not attr_blob or not any(token in attr_blob for token in tokens):
            continue
        text = collapse_whitespace(element.visible_text())
        if not text or len(text) > config.candidate_max_chars:
            continue
        folded = text.casefold()
        if folded not in seen:
            seen.add(folded)
            authors.append(text)
    return authors


# Characters that end a byline name run: line breaks, digits (dates), and
# punctuation other than the separators kept for downstream splitting
# (comma, semicolon, slash, ampersand and their localized forms).
_TERMINATORS = "\n\r\0|•·—–:()\\[\\]{}<>\"“”„«»‹›!?؟。！？《》〈〉\\d"
_SPACED_CAPTURE = r"([^" + _TERMINATORS + r"]{2,120})"
_UNSPACED_CAPTURE = r"([^\s" + _TERMINATORS + r"]{1,40}(?:·[^\s" + _TERMINATORS + r"]{1,40}){0,6})"
_SENTENCE_SPLIT_RE = re.compile(r"(?<=\w{3})\.(?=\s|$)")


def _cue_patterns(language: str, config: ExtractorConfig) -> tuple[re.Pattern, ...]:
    return _compile_cue_patterns(language, config.patterns.cues_for(language))


@lru_cache(maxsize=256)
def _compile_cue_patterns(language: str, cues: tuple[str, ...]) -> tuple[re.Pattern, ...]:
    patterns = []
    unspaced = language in UNSPACED_LANGUAGES
    for cue in cues:
        cue_re = r"\s+".join(re.escape(part) for part in cue.split())
        if unspaced and not cue.isascii():
            patterns.append(
                re.compile(cue_re + r"[\s::]*" + _UNSPACED_CAPTURE, re.IGNORECASE)
            )
        else:
            patterns.append(
                re.compile(r"(?<!\w)" + cue_re + r"[\s::]+" + _SPACED_CAPTURE, re.IGNORECASE)
            )
    return tuple(patterns)


def _plausible_name(candidate: str) -> bool:
    for ch in candidate:
        if ch.isalpha():
            # Cased scripts: a byline name starts uppercase. Uncased
            # scripts pass automatically.
            return not ch.islower()
    return False


def extract_byline_regex(
    text: str, language: str, config: ExtractorConfig = DEFAULT_CONFIG
) -> list[str]:
    """Raw byline strings matched by cue-word patterns in visible text.

    The caller passes the page-head region (the extractor uses the first
    ``byline_window_chars`` characters of visible text). Captures stop at
    line breaks, digits, and non-separator punctuation; a sentence period
    inside a capture truncates it. Candidates whose first letter is
    lowercase are rejected as prose, not names.
    """
    matches: list[tuple[int, str]] = []
    for pattern in _cue_patterns(language, config):
        for match in pattern.finditer(text):
            captured = _SENTENCE_SPLIT_RE.split(match.group(1))[0]
            captured = collapse_whitespace(captured).strip()
            if captured and _plausible_name(captured):
                matches.append((match.start(), captured))
    matches.sort(key=lambda pair: pair[0])
    out: list[str] = []
    for _, captured in matches:
        if captured not in out:
            out.append(captured)
    return out


# Splitting a raw byline into fragments: ASCII and localized list commas,
# semicolons, slashes, ampersands, and the plus sign.
_DELIMITER_SPLIT_RE = re.compile(r"[,;/&+،、，；]")

# Role/date tails are cut at the first of these (middle dot is kept for
# unspaced scripts, where it separates name parts instead).
_HARD_SEPARATORS = "—–|•·"
_HARD_SEPARATORS_UNSPACED = "—–|•"


@lru_cache(maxsize=256)
def _and_split_re(language: str, and_words: tuple[str, ...]) -> re.Pattern:
    parts = []
    for word in and_words:
        escaped = re.escape(word)
        if language in UNSPACED_LANGUAGES and not word.isascii():
            parts.append(escaped)
        elif len(word) == 1:
            # Single-letter conjunctions (es "y", ru "и") split only when
            # lowercase and free-standing, so initials stay intact.
            parts.append(r"(?<!\w)" + escaped + r"(?!\w)")
        else:
            parts.append(r"(?i:(?<!\w)" + escaped + r"(?!\w))")
    return re.compile("|".join(parts))


@lru_cache(maxsize=256)
def _cue_strip_re(language: str, cues: tuple[str, ...]) -> re.Pattern:
    ordered = sorted(cues, key=len, reverse=True)
    parts = []
    for cue in ordered:
        cue_re = r"\s+".join(re.escape(part) for part in cue.split())
        if language in UNSPACED_LANGUAGES and not cue.isascii():
            parts.append(cue_re)
        else:
            parts.append(cue_re + r"(?![^\W\d_])")
    return re.compile(r"^\s*(?:" + "|".join(parts) + r")[\s::]*", re.IGNORECASE)


def clean_author_string(
    raw: str, language: str = "en", config: ExtractorConfig = DEFAULT_CONFIG
) -> list[str]:
    """Clean one raw byline string into zero or more author names.

    Cuts the tail after the first hard separator (em/en dash, pipe,
    bullet), strips leading cue words, splits co-authors on list
    delimiters and localized "and" words, trims whitespace and surrounding
    punctuation, drops fragments shorter than two characters, and
    deduplicates case-insensitively while preserving order. Applying the
    function to its own output returns the output unchanged.
    """
    text = nfc(raw)
    separators = (
        _HARD_SEPARATORS_UNSPACED if language in UNSPACED_LANGUAGES else _HARD_SEPARATORS
    )
    cut = len(text)
    for sep in separators:
        index = text.find(sep)
        if index != -1 and index < cut:
            cut = index
    text = text[:cut]

    cue_strip = _cue_strip_re(language, config.patterns.cues_for(language))
    for _ in range(4):
        stripped = cue_strip.sub("", text, count=1)
        if stripped == text:
            break
        text = stripped

    and_split = _and_split_re(language, config.patterns.and_words_for(language))
    fragments: list[str] = []
    for piece in _DELIMITER_SPLIT_RE.split(text):
        fragments.extend(and_split.split(piece))

    authors: list[str] = []
    seen: set[str] = set()
    for fragment in fragments:
        fragment = cue_strip.sub("", fragment, count=1)
        fragment = collapse_whitespace(strip_outer(fragment))
        if len(fragment) < 2:
            continue
        folded = fragment.casefold()
        if folded not in seen:
            seen.add(folded)
            authors.append(fragment)
    return authors


def _clean_all(raws: Iterable[str], language: str, config: ExtractorConfig) -> list[str]:
    authors: list[str] = []
    seen: set[str] = set()
    for raw in raws:
        for author in clean_author_string(raw, language, config):
            folded = author.casefold()
            if folded not in seen:
                seen.add(folded)
                authors.append(author)
    return authors


def extract(
    html: str | Element,
    language: str = "en",
    ner: "NERProvider | None" = None,
    config: ExtractorConfig = DEFAULT_CONFIG,
    diagnostics: Counter | None = None,
) -> ExtractionResult:
    """Run the cascade and return the first stage's non-empty result.

    Pure given its inputs; unparseable HTML never raises (the parser is
    lenient), only empty input does. When every stage comes up empty the
    result has ``method == Method.NONE`` and no authors.
    """
    if isinstance(html, str) and not html:
        raise ValueError("html must be non-empty")
    root = _as_root(html)

    stages = (
        (Method.JSONLD, lambda: extract_jsonld(root, diagnostics)),
        (Method.META_TAG, lambda: extract_meta_tags(root, config.meta_names)),
        (Method.REL_AUTHOR, lambda: extract_rel_author(root)),
        (Method.CLASS_HEURISTIC, lambda: extract_class_heuristics(root, config)),
        (
            Method.BYLINE_REGEX,
            lambda: extract_byline_regex(
                root.visible_text().lstrip()[: config.byline_window_chars], language, config
            ),
        ),
    )
    for method, stage in stages:
        raws = stage()
        authors = _clean_all(raws, language, config)
        if authors:
            return ExtractionResult(authors=tuple(authors), method=method, raw=tuple(raws))

    if ner is not None and ner.supports(language):
        from .ner import ner_extract

        try:
            return ner_extract(root, language, ner, k=config.ner_k,
                               include_organizations=config.include_organizations)
        except Exception:
            if diagnostics is not None:
                diagnostics["ner_provider_error"] += 1
    return EMPTY_RESULT
