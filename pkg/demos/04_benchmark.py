"""
Benchmarking extractors against a gold corpus
=============================================

Every adapter scores every document; failures count as empty answers
rather than disappearing from the averages.
"""
from byline_bench import (
    CascadeAdapter,
    Corpus,
    Document,
    FunctionAdapter,
    GoldLabel,
    NERBaselineAdapter,
    RuleBasedProvider,
    emit_report,
    run_evaluation,
)


def doc(doc_id, language, name, body=""):
    html = (f'<html><head><meta name="author" content="{name}"></head>'
            f"<body>{body}</body></html>")
    return (
        Document(id=doc_id, language=language, url=None, html=html),
        GoldLabel(doc_id=doc_id, authors=(name,)),
    )


pairs = [
    doc("en-1", "en", "Jane Doe"),
    doc("en-2", "en", "John Roe", "<p>Extra text.</p>"),
    doc("fr-1", "fr", "Marie Dubois"),
    doc("ru-1", "ru", "Иван Петров"),
    doc("zh-1", "zh", "王芳"),
]
corpus = Corpus(
    documents=tuple(d for d, _ in pairs),
    labels={label.doc_id: label for _, label in pairs},
)

# Three contestants: the built-in cascade, the entity baseline, and a
# deliberately broken tool for comparison.
adapters = [
    CascadeAdapter(),
    NERBaselineAdapter(RuleBasedProvider()),
    FunctionAdapter("gives-up", lambda d: []),
]

run = run_evaluation(corpus, adapters)
print(f"{len(run.records)} score records "
      f"({len(corpus)} documents x {len(adapters)} adapters)\n")

print(emit_report(run, "markdown").decode("utf-8"))

# The same tables render as csv, json, or radar-json for plotting; the
# per-document records support any custom slicing.
print(emit_report(run, "csv").decode("utf-8"))

worst = min(run.records, key=lambda r: r.rouge1)
print(f"worst single score: {worst.tool} on {worst.doc_id} "
      f"(rouge1={worst.rouge1:.2f})")

# External tools join the same run as subprocess adapters:
#
#   from byline_bench import ExternalAdapter
#   adapters.append(ExternalAdapter("mytool", ["mytool-adapter"]))
#
# see the adapter protocol in byline_bench.protocol for the wire format.
