"""Author/byline extraction for news HTML, with a benchmark harness.

Three layers:

* extraction: :func:`extract` runs a precedence cascade (JSON-LD, meta
  tags, rel=author links, byline-class containers, cue-word regex,
  optional NER fallback) and reports which stage fired.
* metrics: :func:`score_document` compares predicted and gold author
  lists with character ROUGE-1/ROUGE-L and cost-weighted normalized edit
  distance after shared canonicalization.
* harness: :func:`run_evaluation` scores any set of adapters (built-in or
  subprocess tools speaking the line-delimited JSON protocol) over a gold
  corpus and emits per-language/per-tool report tables.
"""
from .corpus import (
    ConversionReport,
    Corpus,
    CorpusError,
    CorpusStats,
    Document,
    GoldLabel,
    LanguageCount,
    convert_labelstudio,
    load_corpus,
    stats,
    write_corpus,
)
from .extract import (
    EMPTY_RESULT,
    ExtractionResult,
    Method,
    clean_author_string,
    extract,
    extract_byline_regex,
    extract_class_heuristics,
    extract_jsonld,
    extract_meta_tags,
    extract_rel_author,
)
from .harness import (
    CascadeAdapter,
    Cell,
    EvaluationRun,
    ExternalAdapter,
    ExtractorAdapter,
    FunctionAdapter,
    NERBaselineAdapter,
    ReportTable,
    RunConfig,
    call_external,
    emit_report,
    load_adapters,
    records_from_csv,
    records_to_csv,
    run_evaluation,
    write_run,
)
from .htmldom import Element, parse
from .metrics import (
    DEFAULT_EDIT_COSTS,
    DocumentScores,
    MetricConfig,
    ScoreRecord,
    edit_distance,
    lcs_length,
    normalized_edit_distance,
    preprocess,
    rouge_l,
    rouge_n,
    score_document,
)
from .ner import (
    CandidateEntity,
    ExternalNERProvider,
    Kind,
    NERProvider,
    RuleBasedProvider,
    UnsupportedLanguageError,
    load_gazetteer,
    ner_extract,
    select_authors,
)
from .patterns import (
    DEFAULT_CONFIG,
    DEFAULT_PATTERNS,
    ExtractorConfig,
    PatternTable,
    load_config,
)
from .protocol import (
    CONFORMANCE_FIXTURE_HTML,
    PROTOCOL_VERSION,
    AdapterDisabled,
    AdapterError,
    AdapterProcess,
    AdapterTimeout,
    ConformanceReport,
    run_conformance,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # corpus
    "ConversionReport", "Corpus", "CorpusError", "CorpusStats", "Document",
    "GoldLabel", "LanguageCount", "convert_labelstudio", "load_corpus",
    "stats", "write_corpus",
    # extraction
    "EMPTY_RESULT", "ExtractionResult", "Method", "clean_author_string",
    "extract", "extract_byline_regex", "extract_class_heuristics",
    "extract_jsonld", "extract_meta_tags", "extract_rel_author",
    # html parsing
    "Element", "parse",
    # metrics
    "DEFAULT_EDIT_COSTS", "DocumentScores", "MetricConfig", "ScoreRecord",
    "edit_distance", "lcs_length", "normalized_edit_distance", "preprocess",
    "rouge_l", "rouge_n", "score_document",
    # ner
    "CandidateEntity", "ExternalNERProvider", "Kind", "NERProvider",
    "RuleBasedProvider", "UnsupportedLanguageError", "load_gazetteer",
    "ner_extract", "select_authors",
    # patterns
    "DEFAULT_CONFIG", "DEFAULT_PATTERNS", "ExtractorConfig", "PatternTable",
    "load_config",
    # harness
    "CascadeAdapter", "Cell", "EvaluationRun", "ExternalAdapter",
    "ExtractorAdapter", "FunctionAdapter", "NERBaselineAdapter",
    "ReportTable", "RunConfig", "call_external", "emit_report",
    "load_adapters", "records_from_csv", "records_to_csv", "run_evaluation",
    "write_run",
    # protocol
    "CONFORMANCE_FIXTURE_HTML", "PROTOCOL_VERSION", "AdapterDisabled",
    "AdapterError", "AdapterProcess", "AdapterTimeout", "ConformanceReport",
    "run_conformance",
]
