"""Benchmark runner: score extractors over a gold corpus and emit tables.

Every (document, adapter) pair yields exactly one score record; failed or
timed-out extractions count as empty predictions instead of being dropped,
since dropping them would flatter the failing tool's mean. Per-document
records are persisted alongside the aggregated tables so any number can be
re-derived or sliced for error analysis.

Aggregation is the per-language arithmetic mean of each tool's document
scores. Reports render as csv, json, markdown, or radar-json (one axis per
language, one series per tool, ready for radar plotting).
"""
from __future__ import annotations

import csv
import io
import json
import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from statistics import fmean
from typing import Callable, Iterable, Sequence

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .corpus import Corpus, Document
from .extract import EMPTY_RESULT, ExtractionResult, Method, extract
from .metrics import MetricConfig, ScoreRecord, preprocess, score_document
from .ner import NERProvider, RuleBasedProvider, ner_extract
from .patterns import DEFAULT_CONFIG, ExtractorConfig, load_config
from .protocol import AdapterDisabled, AdapterError, AdapterProcess, AdapterTimeout

__all__ = [
    "ExtractorAdapter",
    "CascadeAdapter",
    "NERBaselineAdapter",
    "FunctionAdapter",
    "ExternalAdapter",
    "Cell",
    "ReportTable",
    "EvaluationRun",
    "RunConfig",
    "run_evaluation",
    "call_external",
    "emit_report",
    "records_to_csv",
    "records_from_csv",
    "write_run",
    "load_adapters",
    "REPORT_FORMATS",
]

logger = logging.getLogger(__name__)

REPORT_FORMATS = ("csv", "json", "markdown", "radar-json")

METRIC_ORDER = ("rouge1", "rougeL", "ned")


class ExtractorAdapter(ABC):
    """One tool under evaluation."""

    name: str

    def start(self) -> None:
        """Acquire resources before the first document; idempotent."""

    def close(self) -> None:
        """Release resources after the last document; idempotent."""

    @abstractmethod
    def extract_document(self, doc: Document) -> list[str]:
        """Predicted author strings for one document."""


class CascadeAdapter(ExtractorAdapter):
    """The built-in extraction cascade."""

    def __init__(
        self,
        name: str = "cascade",
        config: ExtractorConfig = DEFAULT_CONFIG,
        ner: NERProvider | None = None,
    ) -> None:
        self.name = name
        self.config = config
        self.ner = ner

    def extract_document(self, doc: Document) -> list[str]:
        return list(extract(doc.html, doc.language, ner=self.ner, config=self.config).authors)


class NERBaselineAdapter(ExtractorAdapter):
    """Entity-based extraction alone, bypassing the cascade's other stages."""

    def __init__(
        self,
        provider: NERProvider,
        name: str = "custom-ner",
        k: int = 3,
        include_organizations: bool = False,
    ) -> None:
        self.name = name
        self.provider = provider
        self.k = k
        self.include_organizations = include_organizations
        self._lock = threading.Lock()

    def extract_document(self, doc: Document) -> list[str]:
        if not self.provider.supports(doc.language):
            return []
        if self.provider.thread_safe:
            result = ner_extract(doc.html, doc.language, self.provider, self.k,
                                 self.include_organizations)
        else:
            with self._lock:
                result = ner_extract(doc.html, doc.language, self.provider, self.k,
                                     self.include_organizations)
        return list(result.authors)


class FunctionAdapter(ExtractorAdapter):
    """Wrap any callable; handy for tests and custom in-process tools."""

    def __init__(self, name: str, fn: Callable[[Document], list[str]]):
        self.name = name
        self.fn = fn

    def extract_document(self, doc: Document) -> list[str]:
        return list(self.fn(doc))


class ExternalAdapter(ExtractorAdapter):
    """A subprocess tool behind the line-delimited JSON protocol.

    Timeouts and per-document errors score as empty; once the process
    dies or violates the protocol, every remaining document scores empty
    and the cause is logged once.
    """

    def __init__(self, name: str, command: list[str], timeout: float = 30.0):
        self.name = name
        self.command = list(command)
        self.timeout = timeout
        self.process: AdapterProcess | None = None
        self._dead = False

    def start(self) -> None:
        if self.process is None:
            self.process = AdapterProcess(self.command, timeout=self.timeout).start()

    def close(self) -> None:
        if self.process is not None:
            self.process.close()
            self.process = None
        self._dead = False

    def extract_document(self, doc: Document) -> list[str]:
        if self._dead:
            return []
        self.start()
        assert self.process is not None
        try:
            return self.process.request(doc.html, doc.url, doc.language, doc_id=doc.id)
        except AdapterTimeout:
            logger.warning("adapter %s timed out on %s; scoring empty", self.name, doc.id)
            return []
        except AdapterError as exc:
            logger.error("adapter %s unusable from %s onward: %s", self.name, doc.id, exc)
            self._dead = True
            return []


def _sanitize_authors(authors: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for author in authors:
        author = author.strip()
        if author and author not in out:
            out.append(author)
    return tuple(out)


def call_external(process: AdapterProcess, documents: Sequence[Document]) -> list[ExtractionResult]:
    """Stream every document through one adapter process, in order.

    Timeouts and reported errors yield empty results for their document;
    a crash or protocol violation yields empty results for all remaining
    documents.
    """
    results: list[ExtractionResult] = []
    broken = False
    for doc in documents:
        if broken:
            results.append(EMPTY_RESULT)
            continue
        try:
            authors = _sanitize_authors(process.request(doc.html, doc.url, doc.language, doc_id=doc.id))
        except AdapterTimeout:
            logger.warning("adapter %s timed out on %s", process.name, doc.id)
            results.append(EMPTY_RESULT)
            continue
        except AdapterError as exc:
            logger.error("adapter %s failed at %s: %s", process.name, doc.id, exc)
            broken = True
            results.append(EMPTY_RESULT)
            continue
        if authors:
            results.append(ExtractionResult(authors=authors, method=Method.EXTERNAL, raw=authors))
        else:
            results.append(EMPTY_RESULT)
    return results


@dataclass(frozen=True)
class Cell:
    mean: float
    n_docs: int
    n_empty: int


@dataclass(frozen=True)
class ReportTable:
    """Per-language rows by per-tool columns for one metric."""

    metric: str
    higher_is_better: bool
    languages: tuple[str, ...]
    tools: tuple[str, ...]
    cells: dict[tuple[str, str], Cell]

    def best_tools(self, language: str) -> tuple[str, ...]:
        """Tools achieving the best mean in this language row, ties included."""
        present = [(tool, self.cells[(language, tool)].mean)
                   for tool in self.tools if (language, tool) in self.cells]
        if not present:
            return ()
        best = max(m for _, m in present) if self.higher_is_better else min(m for _, m in present)
        return tuple(tool for tool, mean in present if mean == best)


@dataclass(frozen=True)
class RunConfig:
    metrics: MetricConfig = field(default_factory=MetricConfig)
    timeout_secs: float = 30.0


@dataclass(frozen=True)
class EvaluationRun:
    """Everything a run produced: per-document records, aggregate tables,
    and the raw predictions keyed by (doc_id, tool)."""

    records: tuple[ScoreRecord, ...]
    tables: dict[str, ReportTable]
    predictions: dict[tuple[str, str], tuple[str, ...]]


def _run_one_adapter(adapter: ExtractorAdapter, corpus: Corpus) -> list[tuple[str, ...]]:
    predictions: list[tuple[str, ...]] = []
    try:
        adapter.start()
    except Exception as exc:
        logger.error("adapter %s failed to start: %s; all documents score empty",
                     adapter.name, exc)
        return [()] * len(corpus)
    try:
        for doc in corpus:
            try:
                predictions.append(_sanitize_authors(adapter.extract_document(doc)))
            except Exception as exc:
                logger.error("adapter %s crashed on %s: %s; scoring empty",
                             adapter.name, doc.id, exc)
                predictions.append(())
    finally:
        try:
            adapter.close()
        except Exception as exc:
            logger.warning("adapter %s close failed: %s", adapter.name, exc)
    return predictions


def run_evaluation(
    corpus: Corpus,
    adapters: Sequence[ExtractorAdapter],
    config: RunConfig | None = None,
) -> EvaluationRun:
    """Score every adapter on every document and aggregate per language.

    Adapters run concurrently, one worker thread each; an external
    adapter's documents flow sequentially through its single process.
    Deterministic given deterministic adapters: records follow corpus
    order, tool columns follow adapter order.
    """
    config = config or RunConfig()
    if len(corpus) == 0:
        raise ValueError("cannot evaluate an empty corpus")
    if not adapters:
        raise ValueError("need at least one adapter")
    names = [a.name for a in adapters]
    if len(set(names)) != len(names):
        raise ValueError(f"adapter names must be unique, got {names}")

    results: dict[str, list[tuple[str, ...]]] = {}
    if len(adapters) == 1:
        results[adapters[0].name] = _run_one_adapter(adapters[0], corpus)
    else:
        threads = []
        for adapter in adapters:
            def work(a: ExtractorAdapter = adapter) -> None:
                results[a.name] = _run_one_adapter(a, corpus)
            thread = threading.Thread(target=work, name=f"adapter-{adapter.name}")
            thread.start()
            threads.append(thread)
        for thread in threads:
            thread.join()

    records: list[ScoreRecord] = []
    predictions: dict[tuple[str, str], tuple[str, ...]] = {}
    for index, doc in enumerate(corpus):
        gold = corpus.label_for(doc.id).authors
        for adapter in adapters:
            pred = results[adapter.name][index]
            predictions[(doc.id, adapter.name)] = pred
            scores = score_document(pred, gold, config.metrics)
            records.append(
                ScoreRecord(
                    doc_id=doc.id,
                    tool=adapter.name,
                    language=doc.language,
                    rouge1=scores.rouge1,
                    rougeL=scores.rougeL,
                    ned=scores.ned,
                )
            )
    tables = _build_tables(records, predictions, tuple(names))
    return EvaluationRun(records=tuple(records), tables=tables, predictions=predictions)


def _build_tables(
    records: Sequence[ScoreRecord],
    predictions: dict[tuple[str, str], tuple[str, ...]],
    tools: tuple[str, ...],
) -> dict[str, ReportTable]:
    languages = tuple(sorted({r.language for r in records}))
    grouped: dict[tuple[str, str], list[ScoreRecord]] = {}
    for record in records:
        grouped.setdefault((record.language, record.tool), []).append(record)
    tables: dict[str, ReportTable] = {}
    for metric in METRIC_ORDER:
        cells: dict[tuple[str, str], Cell] = {}
        for (language, tool), group in grouped.items():
            n_empty = sum(
                1 for r in group if not preprocess(predictions[(r.doc_id, tool)])
            )
            cells[(language, tool)] = Cell(
                mean=fmean(getattr(r, metric) for r in group),
                n_docs=len(group),
                n_empty=n_empty,
            )
        tables[metric] = ReportTable(
            metric=metric,
            higher_is_better=metric != "ned",
            languages=languages,
            tools=tools,
            cells=cells,
        )
    return tables


def _coerce_tables(tables: dict[str, ReportTable] | EvaluationRun) -> dict[str, ReportTable]:
    if isinstance(tables, EvaluationRun):
        return tables.tables
    return tables


def emit_report(tables: dict[str, ReportTable] | EvaluationRun, format: str) -> bytes:
    """Render aggregate tables in one of csv, json, markdown, radar-json.

    Byte-deterministic: the same tables always rendering to the same
    bytes. Markdown bolds the best cell per language row (all of them on
    ties) and renders ROUGE cells with no character overlap as a dash.
    """
    tables = _coerce_tables(tables)
    if format == "csv":
        return _emit_csv(tables)
    if format == "json":
        return _emit_json(tables)
    if format == "markdown":
        return _emit_markdown(tables)
    if format == "radar-json":
        return _emit_radar(tables)
    raise ValueError(f"unknown report format {format!r}; expected one of {REPORT_FORMATS}")


def _emit_csv(tables: dict[str, ReportTable]) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["metric", "language", "tool", "mean", "n_docs", "n_empty"])
    for table in tables.values():
        for language in table.languages:
            for tool in table.tools:
                cell = table.cells.get((language, tool))
                if cell is None:
                    continue
                writer.writerow(
                    [table.metric, language, tool, repr(cell.mean), cell.n_docs, cell.n_empty]
                )
    return out.getvalue().encode("utf-8")


def _emit_json(tables: dict[str, ReportTable]) -> bytes:
    payload = {
        "tables": [
            {
                "metric": table.metric,
                "higher_is_better": table.higher_is_better,
                "languages": list(table.languages),
                "tools": list(table.tools),
                "cells": [
                    {
                        "language": language,
                        "tool": tool,
                        "mean": table.cells[(language, tool)].mean,
                        "n_docs": table.cells[(language, tool)].n_docs,
                        "n_empty": table.cells[(language, tool)].n_empty,
                        "best": tool in table.best_tools(language),
                    }
                    for language in table.languages
                    for tool in table.tools
                    if (language, tool) in table.cells
                ],
            }
            for table in tables.values()
        ]
    }
    return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _emit_markdown(tables: dict[str, ReportTable]) -> bytes:
    lines: list[str] = []
    for table in tables.values():
        direction = "higher is better" if table.higher_is_better else "lower is better"
        lines.append(f"## {table.metric} ({direction})")
        lines.append("")
        lines.append("| language | " + " | ".join(table.tools) + " |")
        lines.append("| --- |" + " ---: |" * len(table.tools))
        for language in table.languages:
            best = set(table.best_tools(language))
            row = [language]
            for tool in table.tools:
                cell = table.cells.get((language, tool))
                if cell is None:
                    row.append("")
                elif table.higher_is_better and cell.mean == 0.0:
                    # No character overlap at all.
                    row.append("—")
                elif tool in best:
                    row.append(f"**{cell.mean:.3f}**")
                else:
                    row.append(f"{cell.mean:.3f}")
            lines.append("| " + " | ".join(row) + " |")
        lines.append("")
    return "\n".join(lines).encode("utf-8")


def _emit_radar(tables: dict[str, ReportTable]) -> bytes:
    payload = {
        "charts": [
            {
                "metric": table.metric,
                "higher_is_better": table.higher_is_better,
                "axes": list(table.languages),
                "series": [
                    {
                        "tool": tool,
                        "values": [
                            table.cells[(language, tool)].mean
                            if (language, tool) in table.cells
                            else None
                            for language in table.languages
                        ],
                    }
                    for tool in table.tools
                ],
            }
            for table in tables.values()
        ]
    }
    return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def records_to_csv(records: Sequence[ScoreRecord]) -> bytes:
    """Per-document records as csv; floats keep full precision so means
    re-aggregate exactly."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["doc_id", "tool", "language", "rouge1", "rougeL", "ned"])
    for record in records:
        writer.writerow(
            [record.doc_id, record.tool, record.language,
             repr(record.rouge1), repr(record.rougeL), repr(record.ned)]
        )
    return out.getvalue().encode("utf-8")


def records_from_csv(data: bytes | str) -> list[ScoreRecord]:
    """Parse :func:`records_to_csv` output back into records."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.DictReader(io.StringIO(text))
    return [
        ScoreRecord(
            doc_id=row["doc_id"],
            tool=row["tool"],
            language=row["language"],
            rouge1=float(row["rouge1"]),
            rougeL=float(row["rougeL"]),
            ned=float(row["ned"]),
        )
        for row in reader
    ]


_REPORT_FILENAMES = {
    "csv": "report.csv",
    "json": "report.json",
    "markdown": "report.md",
    "radar-json": "report-radar.json",
}


def write_run(run: EvaluationRun, out_dir: str | Path, format: str = "csv") -> dict[str, Path]:
    """Write the aggregate report plus per-document records.csv."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report_path = out_dir / _REPORT_FILENAMES[format]
    report_path.write_bytes(emit_report(run.tables, format))
    records_path = out_dir / "records.csv"
    records_path.write_bytes(records_to_csv(run.records))
    return {"report": report_path, "records": records_path}


def _builtin_adapter(name: str, entry: dict, base_dir: Path) -> ExtractorAdapter:
    kind = entry["builtin"]
    gazetteer_path = entry.get("gazetteer")
    gazetteer: tuple[str, ...] | str | Path = ()
    if gazetteer_path:
        gazetteer = base_dir / gazetteer_path
    if kind == "cascade":
        config = DEFAULT_CONFIG
        if entry.get("config"):
            config = load_config(base_dir / entry["config"])
        ner = RuleBasedProvider(gazetteer) if entry.get("ner", False) or gazetteer_path else None
        return CascadeAdapter(name=name, config=config, ner=ner)
    if kind == "custom-ner":
        return NERBaselineAdapter(
            RuleBasedProvider(gazetteer),
            name=name,
            k=int(entry.get("k", 3)),
            include_organizations=bool(entry.get("include_organizations", False)),
        )
    raise ValueError(f"unknown builtin adapter {kind!r} (expected cascade or custom-ner)")


def load_adapters(path: str | Path, default_timeout: float = 30.0) -> list[ExtractorAdapter]:
    """Build the adapter list from a TOML file.

    Each ``[[adapter]]`` entry needs a unique ``name`` plus either
    ``builtin`` ("cascade" or "custom-ner", with optional ``config``,
    ``gazetteer``, ``ner``, ``k`` keys) or ``command`` (argv list for an
    external adapter process, with optional ``timeout_secs``). Relative
    paths resolve against the TOML file's directory.
    """
    path = Path(path)
    data = tomllib.loads(path.read_text(encoding="utf-8"))
    entries = data.get("adapter")
    if not isinstance(entries, list) or not entries:
        raise ValueError(f"{path}: expected at least one [[adapter]] entry")
    adapters: list[ExtractorAdapter] = []
    for index, entry in enumerate(entries):
        if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
            raise ValueError(f"{path}: adapter #{index} needs a string 'name'")
        name = entry["name"]
        has_builtin, has_command = "builtin" in entry, "command" in entry
        if has_builtin == has_command:
            raise ValueError(f"{path}: adapter {name!r} needs exactly one of builtin/command")
        if has_builtin:
            adapters.append(_builtin_adapter(name, entry, path.parent))
        else:
            command = entry["command"]
            if not isinstance(command, list) or not all(isinstance(c, str) for c in command):
                raise ValueError(f"{path}: adapter {name!r} command must be a list of strings")
            timeout = float(entry.get("timeout_secs", default_timeout))
            adapters.append(ExternalAdapter(name=name, command=command, timeout=timeout))
    return adapters
