"""Named-entity author baseline: annotate text, keep the rarest persons.

The selection rule reflects how bylines behave: an article's author is
credited once while its subjects are mentioned throughout, so among person
entities the lowest-frequency candidates (earliest mention breaking ties)
are the most author-like. ``select_authors`` implements exactly that and
caps the output at ``k`` names.

Entity annotation is pluggable. :class:`RuleBasedProvider` is a
dependency-free provider good enough for tests and demos: capitalization
patterns for cased scripts, gazetteer lookup for scripts without case.
Heavier taggers plug in through the same :class:`NERProvider` interface,
in process or over the adapter protocol via
:class:`ExternalNERProvider`.
"""
from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Sequence

from .extract import EMPTY_RESULT, ExtractionResult, Method
from .htmldom import Element, parse

if TYPE_CHECKING:
    from .protocol import AdapterProcess

__all__ = [
    "Kind",
    "CandidateEntity",
    "NERProvider",
    "UnsupportedLanguageError",
    "RuleBasedProvider",
    "ExternalNERProvider",
    "load_gazetteer",
    "select_authors",
    "ner_extract",
]


class Kind(str, Enum):
    PERSON = "person"
    ORGANIZATION = "organization"
    OTHER = "other"


@dataclass(frozen=True)
class CandidateEntity:
    """One aggregated entity: exact surface plus document statistics."""

    surface: str
    kind: Kind
    first_offset: int
    frequency: int

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("entity surface must be non-empty")
        if self.frequency < 1:
            raise ValueError(f"frequency must be >= 1, got {self.frequency}")
        if self.first_offset < 0:
            raise ValueError(f"first_offset must be >= 0, got {self.first_offset}")


class UnsupportedLanguageError(ValueError):
    """Raised when a provider is asked to annotate a language it lacks."""


class NERProvider(ABC):
    """Entity annotator contract.

    Implementations must return surfaces that occur verbatim in the input
    text, with valid first offsets and per-surface frequencies.
    ``thread_safe`` declares whether ``annotate`` may be called
    concurrently; the harness serializes calls to providers that say no.
    """

    thread_safe: bool = True

    @property
    def languages(self) -> frozenset[str] | None:
        """Supported language codes, or None when unrestricted."""
        return None

    def supports(self, language: str) -> bool:
        supported = self.languages
        return supported is None or language in supported

    @abstractmethod
    def annotate(self, text: str, language: str) -> list[CandidateEntity]:
        """Entities aggregated by exact surface; raises
        :class:`UnsupportedLanguageError` for an unsupported language."""


def load_gazetteer(path: str | Path) -> frozenset[str]:
    """Known-name list: UTF-8, one name per line, ``#`` starts a comment."""
    names = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        entry = line.split("#", 1)[0].strip()
        if entry:
            names.add(entry)
    return frozenset(names)


# Scripts with no upper/lower distinction: only gazetteer lookup works.
UNCASED_LANGUAGES = frozenset(
    {"am", "ar", "bn", "fa", "gu", "he", "hi", "ja", "ka", "km", "kn", "ko",
     "lo", "ml", "my", "pa", "si", "ta", "te", "th", "ur", "zh"}
)

# Newswire credits that read like authors but are organizations.
DEFAULT_ORGANIZATIONS = frozenset(
    {"reuters", "associated press", "ap", "afp", "dpa", "ansa", "efe",
     "tass", "xinhua", "pti", "ani", "upi", "bloomberg", "ritzau", "epa"}
)

_TOKEN_RE = re.compile(r"[^\W\d_][\w'’\-]*\.?")

_LEADING_STOPWORDS = frozenset({"the", "a", "an"})


def _is_sentence_end(token: str) -> bool:
    # "Doe." ends a sentence; "N." or "J." is an initial.
    return token.endswith(".") and len(token) > 2


class _Run:
    """Consecutive capitalized tokens under assembly."""

    __slots__ = ("parts", "start", "sentence_initial")

    def __init__(self, start: int, sentence_initial: bool) -> None:
        self.parts: list[tuple[int, str]] = []
        self.start = start
        self.sentence_initial = sentence_initial


class RuleBasedProvider(NERProvider):
    """Desk-scale annotator with no model dependencies.

    Cased scripts: maximal runs of capitalized tokens become candidates.
    Multi-token runs are persons; a single capitalized token is kept as
    ``other`` unless it only ever starts sentences (those are dropped as
    ordinary sentence-initial words). All-caps tokens and known newswire
    names are organizations; gazetteer membership forces person.

    Uncased scripts (zh, hi, ur, ...): occurrences of gazetteer names are
    the only candidates, a documented limitation of rule-based tagging.
    """

    def __init__(
        self,
        gazetteer: Iterable[str] | str | Path = (),
        organizations: frozenset[str] = DEFAULT_ORGANIZATIONS,
        uncased_languages: frozenset[str] = UNCASED_LANGUAGES,
    ) -> None:
        if isinstance(gazetteer, (str, Path)):
            gazetteer = load_gazetteer(gazetteer)
        self.gazetteer = tuple(dict.fromkeys(g for g in gazetteer if g))
        self._gazetteer_folded = {name.casefold() for name in self.gazetteer}
        self.organizations = organizations
        self.uncased_languages = uncased_languages

    def annotate(self, text: str, language: str) -> list[CandidateEntity]:
        if not self.supports(language):
            raise UnsupportedLanguageError(language)
        if not text:
            return []
        if language in self.uncased_languages:
            return self._annotate_by_lookup(text)
        return self._annotate_cased(text)

    def _annotate_by_lookup(self, text: str) -> list[CandidateEntity]:
        entities = []
        for name in self.gazetteer:
            first = text.find(name)
            if first == -1:
                continue
            entities.append(
                CandidateEntity(
                    surface=name,
                    kind=Kind.PERSON,
                    first_offset=first,
                    frequency=text.count(name),
                )
            )
        entities.sort(key=lambda e: e.first_offset)
        return entities

    def _annotate_cased(self, text: str) -> list[CandidateEntity]:
        # occurrences: surface -> [first_offset, frequency, seen_mid_sentence]
        occurrences: dict[str, list] = {}
        multi_token: set[str] = set()

        def flush(run: _Run | None) -> None:
            if run is None or not run.parts:
                return
            parts = run.parts
            while parts and parts[0][1].lower() in _LEADING_STOPWORDS:
                parts = parts[1:]
            if not parts:
                return
            words = [token for _, token in parts]
            if _is_sentence_end(words[-1]):
                words[-1] = words[-1][:-1]
            surface = " ".join(words)
            if not surface:
                return
            entry = occurrences.setdefault(surface, [parts[0][0], 0, False])
            entry[1] += 1
            if not run.sentence_initial:
                entry[2] = True
            if len(words) > 1:
                multi_token.add(surface)

        run: _Run | None = None
        sentence_start = True
        prev_end = 0
        for match in _TOKEN_RE.finditer(text):
            token = match.group(0)
            gap = text[prev_end : match.start()]
            prev_end = match.end()
            if "\n" in gap or any(ch in gap for ch in ".!?。！？؟"):
                flush(run)
                run = None
                sentence_start = True
            elif gap.strip(" ") or gap.count(" ") > 2:
                # Punctuation or a layout gap separates tokens without
                # necessarily ending the sentence.
                flush(run)
                run = None
            if token[0].isupper():
                if run is None:
                    run = _Run(match.start(), sentence_start)
                run.parts.append((match.start(), token))
            else:
                flush(run)
                run = None
            sentence_start = _is_sentence_end(token)
            if sentence_start:
                flush(run)
                run = None
        flush(run)

        entities = []
        for surface, (first, freq, mid_sentence) in occurrences.items():
            folded = surface.casefold()
            if folded in self._gazetteer_folded:
                kind = Kind.PERSON
            elif folded in self.organizations or (surface.isupper() and len(surface) > 1):
                kind = Kind.ORGANIZATION
            elif surface in multi_token:
                kind = Kind.PERSON
            elif mid_sentence:
                kind = Kind.OTHER
            else:
                # Only ever seen opening a sentence: ordinary word.
                continue
            entities.append(
                CandidateEntity(
                    surface=surface, kind=kind, first_offset=first, frequency=freq
                )
            )
        entities.sort(key=lambda e: e.first_offset)
        return entities


class ExternalNERProvider(NERProvider):
    """Annotator behind an adapter subprocess.

    Requests carry the document text in the ``html`` field plus a ``text``
    alias; the adapter answers with an ``entities`` list of
    ``{surface, kind, first_offset, frequency}`` objects instead of
    ``authors``.
    """

    thread_safe = False

    def __init__(self, process: "AdapterProcess", languages: frozenset[str] | None = None):
        self.process = process
        self._languages = languages

    @property
    def languages(self) -> frozenset[str] | None:
        return self._languages

    def annotate(self, text: str, language: str) -> list[CandidateEntity]:
        if not self.supports(language):
            raise UnsupportedLanguageError(language)
        raw = self.process.request_entities(text, language)
        entities = []
        for item in raw:
            entities.append(
                CandidateEntity(
                    surface=str(item["surface"]),
                    kind=Kind(item.get("kind", "other")),
                    first_offset=int(item.get("first_offset", 0)),
                    frequency=int(item.get("frequency", 1)),
                )
            )
        return entities


def select_authors(
    entities: Sequence[CandidateEntity],
    k: int = 3,
    include_organizations: bool = False,
) -> list[str]:
    """The ``k`` most author-like entity surfaces.

    Keeps persons (plus organizations when requested, for newswire
    bylines), sorts ascending by (frequency, first offset, surface) and
    returns at most ``k`` surfaces. The surface tiebreak makes the order
    total, so the result is invariant under input permutation.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    kinds = {Kind.PERSON, Kind.ORGANIZATION} if include_organizations else {Kind.PERSON}
    candidates = sorted(
        (e for e in entities if e.kind in kinds),
        key=lambda e: (e.frequency, e.first_offset, e.surface),
    )
    authors: list[str] = []
    for entity in candidates:
        if entity.surface not in authors:
            authors.append(entity.surface)
        if len(authors) == k:
            break
    return authors


def ner_extract(
    html: str | Element,
    language: str,
    provider: NERProvider,
    k: int = 3,
    include_organizations: bool = False,
) -> ExtractionResult:
    """Entity-based extraction over the page's visible text.

    Returned author surfaces occur verbatim in that text; no further
    cleaning is applied. Provider errors propagate to the caller, which
    treats them as a failed stage.
    """
    root = html if isinstance(html, Element) else parse(html)
    text = root.visible_text()
    entities = provider.annotate(text, language)
    authors = select_authors(entities, k, include_organizations)
    if not authors:
        return EMPTY_RESULT
    return ExtractionResult(
        authors=tuple(authors), method=Method.NER_FALLBACK, raw=tuple(authors)
    )
