"""Gold corpus data model, JSONL round-trip, converter, and statistics.

The on-disk format is UTF-8 JSONL with exactly one document per line:

    {"id": str, "language": str, "url": str|null, "html": str, "authors": [str, ...]}

Gold author strings are stored verbatim as annotated; the only load-time
transformation is Unicode NFC normalization of the html and author text so
combining-character encodings cannot skew downstream comparisons.
Authorless documents are legitimate corpus members: they exist to catch
extractors that hallucinate authors.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .textnorm import collapse_whitespace, nfc

__all__ = [
    "CorpusError",
    "Document",
    "GoldLabel",
    "Corpus",
    "LanguageCount",
    "CorpusStats",
    "ConversionReport",
    "load_corpus",
    "write_corpus",
    "convert_labelstudio",
    "stats",
]

REQUIRED_FIELDS = ("id", "language", "url", "html", "authors")

_LANGUAGE_RE = re.compile(r"^[a-z]{2}$")


class CorpusError(ValueError):
    """Raised for malformed corpus files and invariant violations."""


@dataclass(frozen=True)
class Document:
    id: str
    language: str
    url: str | None
    html: str

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("document id must be a non-empty string")
        if not _LANGUAGE_RE.match(self.language):
            raise CorpusError(
                f"document {self.id!r}: language must be a two-letter lowercase code, "
                f"got {self.language!r}"
            )
        if not self.html:
            raise CorpusError(f"document {self.id!r}: html must be non-empty")


@dataclass(frozen=True)
class GoldLabel:
    doc_id: str
    authors: tuple[str, ...]

    def __post_init__(self) -> None:
        seen = set()
        for author in self.authors:
            if not author.strip():
                raise CorpusError(f"label for {self.doc_id!r}: blank author string")
            if author in seen:
                raise CorpusError(f"label for {self.doc_id!r}: duplicate author {author!r}")
            seen.add(author)


@dataclass(frozen=True)
class Corpus:
    """Documents in file order plus exactly one gold label per document."""

    documents: tuple[Document, ...]
    labels: dict[str, GoldLabel] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [doc.id for doc in self.documents]
        if len(set(ids)) != len(ids):
            duplicate = next(i for i in ids if ids.count(i) > 1)
            raise CorpusError(f"duplicate document id {duplicate!r}")
        for doc_id in self.labels:
            if doc_id not in set(ids):
                raise CorpusError(f"label references unknown document {doc_id!r}")
        for doc_id in ids:
            if doc_id not in self.labels:
                raise CorpusError(f"document {doc_id!r} has no gold label")

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def label_for(self, doc_id: str) -> GoldLabel:
        return self.labels[doc_id]


class LanguageCount(NamedTuple):
    document_count: int
    author_count: int


@dataclass(frozen=True)
class CorpusStats:
    """Per-language document and total-annotation counts."""

    per_language: dict[str, LanguageCount]

    @property
    def total_documents(self) -> int:
        return sum(c.document_count for c in self.per_language.values())

    @property
    def total_authors(self) -> int:
        return sum(c.author_count for c in self.per_language.values())


@dataclass(frozen=True)
class ConversionReport:
    """Bookkeeping from a LabelStudio export conversion."""

    total_tasks: int
    converted: int
    skipped: int
    unannotated: int


def _parse_record(obj: object, line_no: int, lax: bool) -> tuple[Document, GoldLabel]:
    if not isinstance(obj, dict):
        raise CorpusError(f"line {line_no}: expected a JSON object, got {type(obj).__name__}")
    missing = [f for f in REQUIRED_FIELDS if f not in obj]
    if missing:
        raise CorpusError(f"line {line_no}: missing required field(s) {', '.join(missing)}")
    if not lax:
        extra = sorted(set(obj) - set(REQUIRED_FIELDS))
        if extra:
            raise CorpusError(
                f"line {line_no}: unknown field(s) {', '.join(extra)} (use lax mode to ignore)"
            )
    for name in ("id", "language", "html"):
        if not isinstance(obj[name], str):
            raise CorpusError(f"line {line_no}: field {name!r} must be a string")
    if obj["url"] is not None and not isinstance(obj["url"], str):
        raise CorpusError(f"line {line_no}: field 'url' must be a string or null")
    authors = obj["authors"]
    if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
        raise CorpusError(f"line {line_no}: field 'authors' must be a list of strings")
    try:
        document = Document(
            id=obj["id"],
            language=obj["language"],
            url=obj["url"],
            html=nfc(obj["html"]),
        )
        label = GoldLabel(doc_id=obj["id"], authors=tuple(nfc(a) for a in authors))
    except CorpusError as exc:
        raise CorpusError(f"line {line_no}: {exc}") from None
    return document, label


def load_corpus(path: str | Path, lax: bool = False) -> Corpus:
    """Load a gold JSONL file, preserving line order as document order.

    Strict by default: any field outside the schema is an error. Pass
    ``lax=True`` to ignore unknown fields. Every error message carries the
    offending line number.
    """
    path = Path(path)
    documents: list[Document] = []
    labels: dict[str, GoldLabel] = {}
    with path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {line_no}: invalid JSON ({exc.msg})") from None
            document, label = _parse_record(obj, line_no, lax)
            if document.id in labels:
                raise CorpusError(f"line {line_no}: duplicate id {document.id!r}")
            documents.append(document)
            labels[document.id] = label
    return Corpus(documents=tuple(documents), labels=labels)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus as gold JSONL; inverse of :func:`load_corpus`."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for doc in corpus:
            record = {
                "id": doc.id,
                "language": doc.language,
                "url": doc.url,
                "html": doc.html,
                "authors": list(corpus.label_for(doc.id).authors),
            }
            handle.write(json.dumps(record, ensure_ascii=False) + "\n")


def stats(corpus: Corpus) -> CorpusStats:
    """Per-language (document_count, author_count) totals, keyed in code order.

    author_count sums annotation list lengths, so a name credited on two
    documents counts twice.
    """
    tallies: dict[str, list[int]] = {}
    for doc in corpus:
        tally = tallies.setdefault(doc.language, [0, 0])
        tally[0] += 1
        tally[1] += len(corpus.label_for(doc.id).authors)
    return CorpusStats(
        per_language={
            lang: LanguageCount(*tallies[lang]) for lang in sorted(tallies)
        }
    )


_HTML_DATA_KEYS = ("html", "text", "content", "body")


def _task_html(task: dict) -> str | None:
    data = task.get("data")
    if not isinstance(data, dict):
        return None
    for key in _HTML_DATA_KEYS:
        value = data.get(key)
        if isinstance(value, str) and value.strip():
            return value
    return None


def _span_texts(annotation: dict, author_label: str) -> list[str]:
    texts: list[str] = []
    for result in annotation.get("result", []):
        if not isinstance(result, dict):
            continue
        value = result.get("value")
        if not isinstance(value, dict):
            continue
        span_labels = value.get("hypertextlabels") or value.get("labels") or []
        if author_label not in span_labels:
            continue
        text = collapse_whitespace(str(value.get("text", "")))
        if text:
            texts.append(text)
    deduped: list[str] = []
    for text in texts:
        if text not in deduped:
            deduped.append(text)
    return deduped


def convert_labelstudio(
    export: list | dict,
    default_language: str = "en",
    author_label: str = "author",
) -> tuple[Corpus, ConversionReport]:
    """Convert a LabelStudio JSON task-list export into a gold corpus.

    Each task contributes one document whose author list is read from the
    task's first completed annotation: the text of every highlighted span
    carrying ``author_label``, whitespace-normalized and deduplicated.
    Tasks whose every annotation was cancelled (the annotator skipped the
    article) and tasks never annotated at all are dropped and counted in
    the returned :class:`ConversionReport`.

    Accepts both the modern ``annotations`` and the legacy ``completions``
    task layout. Task data may carry ``language`` and ``url`` fields; the
    language falls back to ``default_language``.
    """
    if isinstance(export, dict):
        tasks = export.get("tasks")
        if not isinstance(tasks, list):
            raise CorpusError("export object has no 'tasks' list")
    else:
        tasks = export
    documents: list[Document] = []
    labels: dict[str, GoldLabel] = {}
    skipped = 0
    unannotated = 0
    for index, task in enumerate(tasks):
        if not isinstance(task, dict):
            raise CorpusError(f"task #{index}: expected a JSON object")
        html = _task_html(task)
        if html is None:
            raise CorpusError(f"task #{index}: no HTML payload in task data")
        annotations = task.get("annotations")
        if not isinstance(annotations, list):
            annotations = task.get("completions")
        if not isinstance(annotations, list) or not annotations:
            unannotated += 1
            continue
        completed = [a for a in annotations if isinstance(a, dict) and not a.get("was_cancelled")]
        if not completed:
            skipped += 1
            continue
        data = task.get("data", {})
        language = data.get("language") if isinstance(data, dict) else None
        url = data.get("url") if isinstance(data, dict) else None
        doc_id = f"task-{task['id']}" if "id" in task else f"task-{index}"
        document = Document(
            id=doc_id,
            language=language if isinstance(language, str) else default_language,
            url=url if isinstance(url, str) and url else None,
            html=nfc(html),
        )
        authors = tuple(nfc(t) for t in _span_texts(completed[0], author_label))
        documents.append(document)
        labels[doc_id] = GoldLabel(doc_id=doc_id, authors=authors)
    corpus = Corpus(documents=tuple(documents), labels=labels)
    report = ConversionReport(
        total_tasks=len(tasks),
        converted=len(documents),
        skipped=skipped,
        unannotated=unannotated,
    )
    return corpus, report
