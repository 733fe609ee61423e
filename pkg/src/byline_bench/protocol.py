"""Runner side of the adapter subprocess protocol.

An adapter is any executable speaking UTF-8 line-delimited JSON on
stdin/stdout:

* handshake: the runner sends ``{"protocol": "byline-adapter/1"}``; the
  adapter replies ``{"protocol": "byline-adapter/1", "name": <string>}``.
* request: ``{"id": str, "html": str, "url": str|null, "language": str}``
* response: ``{"id": str, "authors": [str, ...], "error": str|null}``

One response per request id, in any order. A response to a request that
already timed out is tolerated and dropped; a response with a never-issued
id, duplicate responses, or unparseable output are protocol violations
that disable the adapter for the rest of the run. Entity providers reuse
the same framing with a ``text`` request field and an ``entities``
response list in place of ``authors``.
"""
from __future__ import annotations

import itertools
import json
import logging
import subprocess
import threading
import time
from dataclasses import dataclass, field

__all__ = [
    "PROTOCOL_VERSION",
    "AdapterError",
    "AdapterDisabled",
    "AdapterTimeout",
    "AdapterProcess",
    "ConformanceReport",
    "run_conformance",
    "CONFORMANCE_FIXTURE_HTML",
]

logger = logging.getLogger(__name__)

PROTOCOL_VERSION = "byline-adapter/1"

# Minimal page with one unambiguous metadata author; used by the
# conformance check and reusable as a smoke fixture for any adapter.
CONFORMANCE_FIXTURE_HTML = (
    "<!DOCTYPE html><html><head>"
    '<meta charset="utf-8">'
    "<title>Quarterly results beat expectations</title>"
    '<meta name="author" content="Jane Doe">'
    "</head><body>"
    "<h1>Quarterly results beat expectations</h1>"
    "<p>By Jane Doe</p>"
    "<p>The company reported record revenue for the third quarter, "
    "driven by strong demand across all regions. Analysts had expected "
    "a far weaker performance given the broader market slowdown.</p>"
    "</body></html>"
)


class AdapterError(RuntimeError):
    """Base class for adapter failures."""


class AdapterDisabled(AdapterError):
    """The adapter violated the protocol or died; no further requests."""


class AdapterTimeout(AdapterError):
    """No response for a request within the per-document timeout."""


class AdapterProcess:
    """One adapter subprocess with a single in-flight request pipeline.

    Start with :meth:`start` (or as a context manager), issue
    :meth:`request` per document, :meth:`close` when done. Requests are
    sent sequentially by the calling thread; a background reader matches
    response lines to waiting requests by id.
    """

    def __init__(self, command: list[str], timeout: float = 30.0):
        self.command = list(command)
        self.timeout = timeout
        self.name: str | None = None
        self._proc: subprocess.Popen | None = None
        self._cond = threading.Condition()
        self._handshake: dict | None = None
        self._responses: dict[str, dict] = {}
        self._issued: set[str] = set()
        self._stale: set[str] = set()
        self._answered: set[str] = set()
        self._disabled_reason: str | None = None
        self._eof = False
        self._ids = itertools.count(1)

    # -- lifecycle -----------------------------------------------------

    def start(self) -> "AdapterProcess":
        self._proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            text=True,
            encoding="utf-8",
            errors="replace",
            bufsize=1,
        )
        threading.Thread(target=self._read_loop, daemon=True).start()
        threading.Thread(target=self._drain_stderr, daemon=True).start()
        self._send({"protocol": PROTOCOL_VERSION})
        reply = self._wait_handshake()
        if reply.get("protocol") != PROTOCOL_VERSION or not isinstance(reply.get("name"), str) \
                or not reply.get("name"):
            self._disable(f"bad handshake reply: {reply!r}")
            raise AdapterDisabled(self._disabled_reason)
        self.name = reply["name"]
        return self

    def _wait_handshake(self) -> dict:
        deadline = time.monotonic() + self.timeout
        with self._cond:
            while self._handshake is None and not self._eof and self._disabled_reason is None:
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    self._disable_locked(f"no handshake reply within {self.timeout}s")
                    break
                self._cond.wait(remaining)
            if self._handshake is not None:
                return self._handshake
            if self._disabled_reason is not None:
                raise AdapterDisabled(self._disabled_reason)
            raise AdapterDisabled("adapter exited before the handshake")

    def __enter__(self) -> "AdapterProcess":
        return self.start()

    def __exit__(self, *exc_info: object) -> None:
        self.close()

    def close(self) -> None:
        proc = self._proc
        if proc is None:
            return
        try:
            if proc.stdin:
                proc.stdin.close()
        except OSError:
            pass
        try:
            proc.wait(timeout=2)
        except subprocess.TimeoutExpired:
            proc.terminate()
            try:
                proc.wait(timeout=2)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()

    @property
    def alive(self) -> bool:
        return self._proc is not None and self._proc.poll() is None

    @property
    def disabled_reason(self) -> str | None:
        return self._disabled_reason

    # -- requests ------------------------------------------------------

    def request(self, html: str, url: str | None, language: str, doc_id: str | None = None) -> list[str]:
        """Authors for one document; [] when the adapter reports an error.

        Raises :class:`AdapterTimeout` when no response arrives in time
        and :class:`AdapterDisabled` once the adapter is unusable.
        """
        payload = {"html": html, "url": url, "language": language}
        response = self._roundtrip(payload, doc_id)
        authors = response.get("authors")
        if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
            self._disable(f"malformed authors in response: {authors!r}")
            raise AdapterDisabled(self._disabled_reason)
        error = response.get("error")
        if error is not None:
            logger.warning("adapter %s reported error: %s", self.name, error)
            return []
        return list(authors)

    def request_entities(self, text: str, language: str) -> list[dict]:
        """Entity variant: the adapter answers with an ``entities`` list."""
        payload = {"html": text, "text": text, "url": None, "language": language}
        response = self._roundtrip(payload, None)
        entities = response.get("entities")
        if not isinstance(entities, list) or not all(isinstance(e, dict) for e in entities):
            self._disable(f"malformed entities in response: {entities!r}")
            raise AdapterDisabled(self._disabled_reason)
        error = response.get("error")
        if error is not None:
            logger.warning("adapter %s reported error: %s", self.name, error)
            return []
        return entities

    def _roundtrip(self, payload: dict, doc_id: str | None) -> dict:
        rid = f"{next(self._ids)}" if doc_id is None else f"{next(self._ids)}:{doc_id}"
        with self._cond:
            if self._disabled_reason is not None:
                raise AdapterDisabled(self._disabled_reason)
            if self._eof:
                raise AdapterDisabled("adapter process exited")
            self._issued.add(rid)
        self._send(dict(payload, id=rid))
        deadline = time.monotonic() + self.timeout
        with self._cond:
            while (
                rid not in self._responses
                and not self._eof
                and self._disabled_reason is None
            ):
                remaining = deadline - time.monotonic()
                if remaining <= 0:
                    self._issued.discard(rid)
                    self._stale.add(rid)
                    raise AdapterTimeout(f"no response for {rid} within {self.timeout}s")
                self._cond.wait(remaining)
            # A delivered response wins over a violation that arrived after it.
            if rid in self._responses:
                return self._responses.pop(rid)
            if self._disabled_reason is not None:
                raise AdapterDisabled(self._disabled_reason)
            raise AdapterDisabled("adapter process exited mid-request")

    # -- plumbing --------------------------------------------------------

    def _send(self, obj: dict) -> None:
        proc = self._proc
        assert proc is not None and proc.stdin is not None
        try:
            proc.stdin.write(json.dumps(obj, ensure_ascii=False) + "\n")
            proc.stdin.flush()
        except (OSError, ValueError):
            with self._cond:
                self._eof = True
                self._cond.notify_all()

    def _read_loop(self) -> None:
        proc = self._proc
        assert proc is not None and proc.stdout is not None
        for line in proc.stdout:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except ValueError:
                self._disable(f"unparseable adapter output: {line[:120]!r}")
                return
            if not isinstance(obj, dict):
                self._disable(f"adapter emitted a non-object line: {line[:120]!r}")
                return
            with self._cond:
                if self._handshake is None and "id" not in obj:
                    self._handshake = obj
                    self._cond.notify_all()
                    continue
                rid = obj.get("id")
                if not isinstance(rid, str):
                    self._disable_locked(f"response without a string id: {line[:120]!r}")
                    return
                if rid in self._issued:
                    self._issued.discard(rid)
                    self._answered.add(rid)
                    self._responses[rid] = obj
                    self._cond.notify_all()
                elif rid in self._stale:
                    # Late answer to a timed-out request: drop, stay healthy.
                    self._stale.discard(rid)
                    self._answered.add(rid)
                elif rid in self._answered:
                    self._disable_locked(f"duplicate response for id {rid!r}")
                    return
                else:
                    self._disable_locked(f"response carries unknown id {rid!r}")
                    return
        with self._cond:
            self._eof = True
            self._cond.notify_all()

    def _drain_stderr(self) -> None:
        proc = self._proc
        assert proc is not None and proc.stderr is not None
        for line in proc.stderr:
            line = line.rstrip()
            if line:
                logger.debug("adapter %s stderr: %s", self.name or self.command[0], line)

    def _disable(self, reason: str) -> None:
        with self._cond:
            self._disable_locked(reason)

    def _disable_locked(self, reason: str) -> None:
        if self._disabled_reason is None:
            self._disabled_reason = reason
            logger.error("adapter %s disabled: %s", self.name or self.command[0], reason)
        self._cond.notify_all()


@dataclass
class ConformanceReport:
    """Outcome of the generic adapter conformance check."""

    command: list[str]
    name: str | None = None
    handshake_ok: bool = False
    id_echo_ok: bool = False
    single_response_ok: bool = False
    fault_path_ok: bool = False
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def run_conformance(command: list[str], timeout: float = 10.0) -> ConformanceReport:
    """Exercise an adapter command against the protocol contract.

    Checks: handshake shape, request id echo on a fixture document,
    exactly one response per request, and the fault path (a request the
    wrapped tool cannot handle must still produce a well-formed response
    rather than kill the process).
    """
    report = ConformanceReport(command=list(command))
    process = AdapterProcess(command, timeout=timeout)
    try:
        try:
            process.start()
        except (AdapterError, OSError) as exc:
            report.failures.append(f"handshake failed: {exc}")
            return report
        report.handshake_ok = True
        report.name = process.name

        try:
            authors = process.request(
                CONFORMANCE_FIXTURE_HTML, "https://example.com/a", "en"
            )
            if isinstance(authors, list):
                report.id_echo_ok = True
            else:  # pragma: no cover - request() already guarantees a list
                report.failures.append(f"non-list authors: {authors!r}")
        except AdapterError as exc:
            report.failures.append(f"fixture request failed: {exc}")

        # A duplicate response would disable the process within the grace
        # period; give a sluggish duplicate a moment to show up.
        time.sleep(0.2)
        if process.disabled_reason is None:
            report.single_response_ok = True
        else:
            report.failures.append(f"protocol violation: {process.disabled_reason}")
            return report

        try:
            process.request("", None, "en")
            report.fault_path_ok = process.alive
            if not process.alive:
                report.failures.append("process died on an empty document")
        except AdapterError as exc:
            report.failures.append(f"fault path failed: {exc}")
    finally:
        process.close()
    return report
