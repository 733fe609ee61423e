"""Line-delimited JSON adapter loop shared by all shims.

Protocol ("byline-adapter/1", one UTF-8 JSON object per line):

    runner -> {"protocol": "byline-adapter/1"}
    shim   -> {"protocol": "byline-adapter/1", "name": <tool name>}
    runner -> {"id": str, "html": str, "url": str|null, "language": str}
    shim   -> {"id": str, "authors": [str, ...], "error": str|null}

The loop runs until EOF on stdin and answers every request exactly
once.  A failure while handling one document (including the wrapped
library being missing or raising) becomes the "error" field of that
document's response; it never kills the process.
"""

from __future__ import annotations

import json
import sys
from typing import Callable, TextIO

PROTOCOL = "byline-adapter/1"

# Some libraries refuse to parse without a URL; substituted when the
# runner sends null.  The .invalid TLD is reserved and never resolves.
PLACEHOLDER_URL = "https://placeholder.invalid/article"

ExtractFn = Callable[[str, str, str], object]


def normalize_authors(value: object) -> list[str]:
    """Coerce an extractor's return value to a list of strings.

    Libraries variously hand back None, a single string, or an
    iterable of strings.  Strings are passed through verbatim; only
    the container shape is normalized.  Non-string items and empty
    strings are dropped.
    """
    if value is None:
        return []
    if isinstance(value, str):
        return [value] if value else []
    try:
        items = iter(value)
    except TypeError:
        return []
    return [item for item in items if isinstance(item, str) and item]


def _send(stdout: TextIO, obj: dict) -> None:
    stdout.write(json.dumps(obj, ensure_ascii=False) + "\n")
    stdout.flush()


def serve(name: str, extract: ExtractFn,
          stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    """Answer protocol requests with ``extract(html, url, language)``.

    ``url`` passed to the extractor is never empty: PLACEHOLDER_URL is
    substituted when the request carries null.  Returns a process exit
    code (0 on clean EOF, 1 on a broken handshake).
    """
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout

    hello_line = stdin.readline()
    if not hello_line:
        return 0
    try:
        hello = json.loads(hello_line)
    except ValueError:
        print(f"{name}: handshake is not valid JSON", file=sys.stderr)
        return 1
    if not isinstance(hello, dict) or hello.get("protocol") != PROTOCOL:
        print(f"{name}: expected a {PROTOCOL} handshake", file=sys.stderr)
        return 1
    _send(stdout, {"protocol": PROTOCOL, "name": name})

    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            request = json.loads(line)
        except ValueError:
            # No id to answer with; log and keep serving.
            print(f"{name}: skipping undecodable request line", file=sys.stderr)
            continue
        if not isinstance(request, dict) or not isinstance(request.get("id"), str):
            print(f"{name}: skipping request without a string id", file=sys.stderr)
            continue
        rid = request["id"]
        html = request.get("html")
        if not isinstance(html, str):
            _send(stdout, {"id": rid, "authors": [],
                           "error": "request carries no html string"})
            continue
        url = request.get("url")
        if not isinstance(url, str) or not url:
            url = PLACEHOLDER_URL
        language = request.get("language")
        if not isinstance(language, str):
            language = ""
        try:
            authors = normalize_authors(extract(html, url, language))
        except Exception as exc:
            _send(stdout, {"id": rid, "authors": [],
                           "error": f"{type(exc).__name__}: {exc}"})
            continue
        _send(stdout, {"id": rid, "authors": authors, "error": None})
    return 0


def run(name: str, extract: ExtractFn) -> None:
    """Console entry point helper: serve on process stdio, then exit."""
    sys.exit(serve(name, extract))
