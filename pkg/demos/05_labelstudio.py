"""
From annotation export to gold corpus
=====================================

Gold corpora are JSONL files, one document per line. The converter
ingests LabelStudio span-annotation exports; cancelled and unannotated
tasks are counted but left out.
"""
import json
import tempfile
from pathlib import Path

from byline_bench import convert_labelstudio, load_corpus, stats, write_corpus

export = [
    {
        "id": 101,
        "data": {"html": "<p>Par Marie Dubois</p>", "language": "fr"},
        "annotations": [
            {
                "was_cancelled": False,
                "result": [
                    {
                        "type": "hypertextlabels",
                        "value": {"text": "Marie Dubois",
                                  "hypertextlabels": ["author"]},
                    }
                ],
            }
        ],
    },
    {
        "id": 102,
        "data": {"html": "<p>Автор: Иван Петров и Анна Смирнова</p>",
                 "language": "ru"},
        "annotations": [
            {
                "was_cancelled": False,
                "result": [
                    {
                        "type": "hypertextlabels",
                        "value": {"text": name, "hypertextlabels": ["author"]},
                    }
                    for name in ("Иван Петров", "Анна Смирнова")
                ],
            }
        ],
    },
    # An anonymous article: annotated, zero author spans.
    {
        "id": 103,
        "data": {"html": "<p>Sans signature.</p>", "language": "fr"},
        "annotations": [{"was_cancelled": False, "result": []}],
    },
    # A task the annotator rejected.
    {
        "id": 104,
        "data": {"html": "<p>broken page</p>", "language": "fr"},
        "annotations": [{"was_cancelled": True, "result": []}],
    },
]

corpus, report = convert_labelstudio(export)
print(f"converted {report.converted} of {report.total_tasks} tasks "
      f"(skipped {report.skipped}, unannotated {report.unannotated})")

for document in corpus:
    label = corpus.label_for(document.id)
    print(f"  {document.id} [{document.language}] -> {list(label.authors)}")

# Round-trip through the JSONL format.
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "gold.jsonl"
    write_corpus(corpus, path)
    print()
    print(path.read_text(encoding="utf-8").splitlines()[0])
    reloaded = load_corpus(path)
    assert reloaded == corpus

# Per-language counts, the shape used for dataset summaries.
print()
table = stats(corpus)
for language, count in table.per_language.items():
    print(f"  {language}: {count.document_count} documents, "
          f"{count.author_count} authors")
print(f"  total: {table.total_documents} documents, {table.total_authors} authors")

# The equivalent command-line round trip:
#
#   byline-bench convert --labelstudio export.json --out gold.jsonl
#   byline-bench stats --corpus gold.jsonl
print()
print("export sample:", json.dumps(export[0]["data"], ensure_ascii=False)[:60], "...")
