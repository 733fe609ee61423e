"""Per-language byline cue words, split words, and extractor tuning knobs.

The defaults cover the ten corpus languages. Everything here is data, not
logic: the extractor consumes these tables, and deployments can override
them from a TOML or JSON file without touching code.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

__all__ = [
    "PatternTable",
    "ExtractorConfig",
    "DEFAULT_PATTERNS",
    "DEFAULT_CONFIG",
    "META_AUTHOR_NAMES",
    "CLASS_TOKENS",
    "load_config",
]

# Meta tag name/property values whose content names an author.
META_AUTHOR_NAMES: tuple[str, ...] = (
    "author",
    "article:author",
    "parsely-author",
    "sailthru.author",
    "dc.creator",
    "dcterms.creator",
    "twitter:creator",
)

# Attribute-value tokens marking byline containers.
CLASS_TOKENS: tuple[str, ...] = ("author", "byline", "writer", "creator")

# Languages written without inter-word spaces; their cues attach directly
# to the name ("记者李伟") so patterns for them must not assume word
# boundaries or separating whitespace.
UNSPACED_LANGUAGES = frozenset({"zh", "ja", "ko"})

_DEFAULT_CUES: dict[str, tuple[str, ...]] = {
    "da": ("af",),
    "de": ("von",),
    "el": ("από τον", "από την", "από τη", "από", "του", "της"),
    "en": ("by", "written by", "story by", "reported by", "reporting by"),
    "es": ("por",),
    "fr": ("par",),
    "hi": ("लेखक", "द्वारा"),
    "ru": ("автор", "авторы", "текст"),
    "ur": ("تحریر", "مصنف"),
    "zh": ("作者", "记者", "記者", "撰文"),
}

# Applied for every language after the localized cues.
_FALLBACK_CUES: tuple[str, ...] = ("by", "author")

# Conjunctions that separate co-authors; the base set is applied for every
# language because mixed-language bylines are common.
_BASE_AND_WORDS: tuple[str, ...] = ("and", "et", "und", "y", "и")

_EXTRA_AND_WORDS: dict[str, tuple[str, ...]] = {
    "da": ("og",),
    "el": ("και",),
    "hi": ("और",),
    "ur": ("اور",),
    "zh": ("和", "与"),
}


def _merged(*groups: tuple[str, ...]) -> tuple[str, ...]:
    seen: list[str] = []
    for group in groups:
        for word in group:
            if word not in seen:
                seen.append(word)
    return tuple(seen)


@dataclass(frozen=True)
class PatternTable:
    """Byline cue words and author-list conjunctions, keyed by language."""

    cues: dict[str, tuple[str, ...]] = field(default_factory=lambda: dict(_DEFAULT_CUES))
    fallback_cues: tuple[str, ...] = _FALLBACK_CUES
    and_words: dict[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(_EXTRA_AND_WORDS)
    )
    base_and_words: tuple[str, ...] = _BASE_AND_WORDS

    def cues_for(self, language: str) -> tuple[str, ...]:
        """Localized cues first, then the language-independent fallbacks."""
        return _merged(self.cues.get(language, ()), self.fallback_cues)

    def and_words_for(self, language: str) -> tuple[str, ...]:
        return _merged(self.base_and_words, self.and_words.get(language, ()))


@dataclass(frozen=True)
class ExtractorConfig:
    """Tunable extraction constants; the defaults are the benchmark setup."""

    candidate_max_chars: int = 120
    byline_window_chars: int = 2000
    ner_k: int = 3
    include_organizations: bool = False
    meta_names: tuple[str, ...] = META_AUTHOR_NAMES
    class_tokens: tuple[str, ...] = CLASS_TOKENS
    patterns: PatternTable = field(default_factory=PatternTable)

    def __post_init__(self) -> None:
        if self.candidate_max_chars < 1 or self.byline_window_chars < 1:
            raise ValueError("length limits must be positive")
        if self.ner_k < 1:
            raise ValueError(f"ner_k must be >= 1, got {self.ner_k}")


DEFAULT_PATTERNS = PatternTable()
DEFAULT_CONFIG = ExtractorConfig()


def _as_word_tuple(value: object, context: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ValueError(f"{context} must be a list of strings")
    return tuple(value)


def load_config(path: str | Path) -> ExtractorConfig:
    """Load extractor overrides from a TOML (default) or JSON file.

    Recognized keys: ``[cues]`` and ``[and_words]`` tables (one list per
    language; a listed language replaces its default list), top-level
    ``fallback_cues``, ``meta_names`` and ``class_tokens`` lists, and the
    scalar limits ``candidate_max_chars``, ``byline_window_chars`` and
    ``ner_k``. Anything omitted keeps its default.
    """
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix.lower() == ".json":
        data = json.loads(raw.decode("utf-8"))
    else:
        data = tomllib.loads(raw.decode("utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a table/object at top level")

    cues = dict(_DEFAULT_CUES)
    for language, words in data.get("cues", {}).items():
        cues[language] = _as_word_tuple(words, f"cues.{language}")
    and_words = dict(_EXTRA_AND_WORDS)
    for language, words in data.get("and_words", {}).items():
        and_words[language] = _as_word_tuple(words, f"and_words.{language}")
    table = PatternTable(cues=cues, and_words=and_words)
    if "fallback_cues" in data:
        table = replace(table, fallback_cues=_as_word_tuple(data["fallback_cues"], "fallback_cues"))

    config = ExtractorConfig(patterns=table)
    for key in ("candidate_max_chars", "byline_window_chars", "ner_k"):
        if key in data:
            if not isinstance(data[key], int):
                raise ValueError(f"{key} must be an integer")
            config = replace(config, **{key: data[key]})
    if "include_organizations" in data:
        config = replace(config, include_organizations=bool(data["include_organizations"]))
    for key in ("meta_names", "class_tokens"):
        if key in data:
            config = replace(config, **{key: _as_word_tuple(data[key], key)})
    return config
