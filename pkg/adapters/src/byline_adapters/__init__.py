"""Stdio adapter shims for third-party news author-extraction libraries.

Each shim is a console script speaking the byline-adapter/1 protocol
(line-delimited JSON over stdin/stdout) around one wrapped library:

    byline-adapter-trafilatura   Trafilatura 1.6.1
    byline-adapter-newspaper3k   Newspaper3k 0.2.8
    byline-adapter-newsplease    news-please 1.5.33
    byline-adapter-extractnet    ExtractNet 2.0.7

Libraries are imported lazily per request.  A shim whose library is
not installed still speaks the protocol correctly: every request is
answered with an error response, so a benchmark run degrades to empty
predictions for that tool instead of crashing.

Tools in other ecosystems (for example go-readability) can join a
benchmark the same way: any executable speaking byline-adapter/1 on
stdio is a valid adapter, no Python required.
"""

from .serve import PLACEHOLDER_URL, PROTOCOL, normalize_authors, run, serve

__version__ = "0.1.0"

# Wrapped library versions the shims are written against.
PINNED_VERSIONS = {
    "trafilatura": "1.6.1",
    "newspaper3k": "0.2.8",
    "news-please": "1.5.33",
    "extractnet": "2.0.7",
}

__all__ = [
    "__version__",
    "PROTOCOL",
    "PLACEHOLDER_URL",
    "PINNED_VERSIONS",
    "normalize_authors",
    "run",
    "serve",
]
