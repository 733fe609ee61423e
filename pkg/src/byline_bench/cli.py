"""Command-line interface.

Subcommands:

* ``evaluate`` - run adapters over a gold corpus and write report files.
* ``extract``  - run the extraction cascade on one HTML file.
* ``convert``  - turn a LabelStudio export into gold JSONL.
* ``stats``    - per-language document/author counts for a corpus.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .corpus import CorpusError, convert_labelstudio, load_corpus, stats, write_corpus
from .extract import extract
from .harness import REPORT_FORMATS, RunConfig, load_adapters, run_evaluation, write_run
from .ner import RuleBasedProvider
from .patterns import DEFAULT_CONFIG, load_config


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="byline-bench",
        description="Author extraction from news HTML and benchmarking against gold corpora.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log debug detail to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="score adapters against a gold corpus")
    p_eval.add_argument("--corpus", required=True, type=Path, help="gold JSONL file")
    p_eval.add_argument("--adapters", required=True, type=Path, help="adapters TOML file")
    p_eval.add_argument("--out", required=True, type=Path, help="output directory")
    p_eval.add_argument("--format", default="csv", choices=REPORT_FORMATS)
    p_eval.add_argument(
        "--timeout-secs", type=float, default=30.0,
        help="per-document timeout for external adapters (default 30)",
    )
    p_eval.add_argument("--lax", action="store_true", help="ignore unknown corpus fields")

    p_extract = sub.add_parser("extract", help="extract authors from one HTML file")
    p_extract.add_argument("--html", required=True, type=Path, help="HTML file to read")
    p_extract.add_argument("--language", required=True, help="two-letter language code")
    p_extract.add_argument("--json", action="store_true", help="print the full result as JSON")
    p_extract.add_argument("--config", type=Path, help="extractor config TOML/JSON")
    p_extract.add_argument(
        "--gazetteer", type=Path,
        help="known-name list enabling the entity fallback stage",
    )

    p_convert = sub.add_parser("convert", help="convert a LabelStudio export to gold JSONL")
    p_convert.add_argument("--labelstudio", required=True, type=Path, help="export JSON file")
    p_convert.add_argument("--out", required=True, type=Path, help="gold JSONL to write")
    p_convert.add_argument("--language", default="en", help="language for tasks that state none")
    p_convert.add_argument("--author-label", default="author", help="span label to collect")

    p_stats = sub.add_parser("stats", help="per-language corpus counts")
    p_stats.add_argument("--corpus", required=True, type=Path, help="gold JSONL file")
    p_stats.add_argument("--lax", action="store_true", help="ignore unknown corpus fields")

    return parser


def _cmd_evaluate(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus, lax=args.lax)
    adapters = load_adapters(args.adapters, default_timeout=args.timeout_secs)
    run = run_evaluation(corpus, adapters, RunConfig(timeout_secs=args.timeout_secs))
    paths = write_run(run, args.out, args.format)
    print(f"scored {len(corpus)} documents x {len(adapters)} adapters")
    print(f"report:  {paths['report']}")
    print(f"records: {paths['records']}")
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    html = args.html.read_text(encoding="utf-8")
    config = load_config(args.config) if args.config else DEFAULT_CONFIG
    ner = RuleBasedProvider(args.gazetteer) if args.gazetteer else None
    result = extract(html, args.language, ner=ner, config=config)
    if args.json:
        print(
            json.dumps(
                {
                    "authors": list(result.authors),
                    "method": result.method.value,
                    "raw": list(result.raw),
                },
                ensure_ascii=False,
            )
        )
    else:
        for author in result.authors:
            print(author)
        print(f"method: {result.method.value}", file=sys.stderr)
    return 0


def _cmd_convert(args: argparse.Namespace) -> int:
    export = json.loads(args.labelstudio.read_text(encoding="utf-8"))
    corpus, report = convert_labelstudio(
        export, default_language=args.language, author_label=args.author_label
    )
    write_corpus(corpus, args.out)
    print(
        f"converted {report.converted} of {report.total_tasks} tasks "
        f"(skipped {report.skipped}, unannotated {report.unannotated}) -> {args.out}"
    )
    return 0


def _cmd_stats(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus, lax=args.lax)
    table = stats(corpus)
    print(f"{'language':<10}{'documents':>10}{'authors':>10}")
    for language, count in table.per_language.items():
        print(f"{language:<10}{count.document_count:>10}{count.author_count:>10}")
    print(f"{'total':<10}{table.total_documents:>10}{table.total_authors:>10}")
    return 0


_COMMANDS = {
    "evaluate": _cmd_evaluate,
    "extract": _cmd_extract,
    "convert": _cmd_convert,
    "stats": _cmd_stats,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _COMMANDS[args.command](args)
    except (CorpusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
