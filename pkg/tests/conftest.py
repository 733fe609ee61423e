import sys
from pathlib import Path

import pytest

from byline_bench import Corpus, Document, GoldLabel

TESTS_DIR = Path(__file__).parent

FAKE_ADAPTER = TESTS_DIR / "fake_adapter.py"


def fake_adapter_cmd(mode: str, *args: str) -> list[str]:
    return [sys.executable, str(FAKE_ADAPTER), mode, *args]


def page(body: str, head: str = "") -> str:
    return f"<!DOCTYPE html><html><head>{head}</head><body>{body}</body></html>"


def meta_author_page(name: str, body: str = "<p>Some article text.</p>") -> str:
    return page(body, head=f'<meta name="author" content="{name}">')


def make_corpus(entries: list[tuple[str, str, str, list[str]]]) -> Corpus:
    """Build a corpus from (id, language, html, authors) tuples."""
    documents = tuple(
        Document(id=doc_id, language=language, url=None, html=html)
        for doc_id, language, html, _ in entries
    )
    labels = {
        doc_id: GoldLabel(doc_id=doc_id, authors=tuple(authors))
        for doc_id, _, _, authors in entries
    }
    return Corpus(documents=documents, labels=labels)


@pytest.fixture
def toy_corpus() -> Corpus:
    return make_corpus(
        [
            ("d1", "en", meta_author_page("Jane Doe"), ["Jane Doe"]),
            ("d2", "en", meta_author_page("John Roe"), ["John Roe"]),
            ("d3", "fr", meta_author_page("Jean Dupont"), ["Jean Dupont"]),
        ]
    )
