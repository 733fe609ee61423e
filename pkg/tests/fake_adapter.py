#!/usr/bin/env python3
"""Protocol test double: a configurable adapter for harness tests.

Usage: fake_adapter.py MODE [ARG]

Modes:
    fixed          answer with the html's meta author (the happy path)
    empty          always answer with no authors
    error          always answer with an error set
    drop-second    never answer the second request (forces a timeout)
    crash-second   exit abruptly on the second request
    late-first     answer the first request only after ARG seconds
    bad-json       emit a non-JSON line instead of a response
    unknown-id     respond with an id that was never issued
    dup            answer every request twice
    bad-handshake  reply with the wrong protocol string
    no-name        reply to the handshake without a name
    entities       answer with a fixed entity list instead of authors

Only the standard library is used, so the file doubles as a minimal
reference implementation of the adapter side of the protocol.
"""
import json
import re
import sys
import time

META_RE = re.compile(r'<meta name="author" content="([^"]*)"')


def emit(obj):
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def main():
    mode = sys.argv[1] if len(sys.argv) > 1 else "fixed"
    arg = float(sys.argv[2]) if len(sys.argv) > 2 else 1.0

    hello = json.loads(sys.stdin.readline())
    assert hello.get("protocol") == "byline-adapter/1", hello
    if mode == "bad-handshake":
        emit({"protocol": "other-protocol/9", "name": "fake"})
    elif mode == "no-name":
        emit({"protocol": "byline-adapter/1"})
    else:
        emit({"protocol": "byline-adapter/1", "name": f"fake-{mode}"})

    seen = 0
    for line in sys.stdin:
        if not line.strip():
            continue
        request = json.loads(line)
        rid = request["id"]
        seen += 1

        if mode == "drop-second" and seen == 2:
            continue
        if mode == "crash-second" and seen == 2:
            sys.exit(3)
        if mode == "late-first" and seen == 1:
            time.sleep(arg)
        if mode == "bad-json":
            sys.stdout.write("definitely not json\n")
            sys.stdout.flush()
            continue
        if mode == "unknown-id":
            emit({"id": "never-issued", "authors": [], "error": None})
            continue
        if mode == "empty":
            emit({"id": rid, "authors": [], "error": None})
            continue
        if mode == "error":
            emit({"id": rid, "authors": [], "error": "parse failure"})
            continue
        if mode == "entities":
            emit({"id": rid, "error": None, "entities": [
                {"surface": "Jane Doe", "kind": "person",
                 "first_offset": 3, "frequency": 1},
                {"surface": "Lisbon", "kind": "other",
                 "first_offset": 0, "frequency": 4},
            ]})
            continue

        match = META_RE.search(request["html"])
        authors = [match.group(1)] if match and match.group(1) else []
        emit({"id": rid, "authors": authors, "error": None})
        if mode == "dup":
            emit({"id": rid, "authors": authors, "error": None})


if __name__ == "__main__":
    main()
