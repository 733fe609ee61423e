"""Each shim subprocess must satisfy the generic adapter conformance
check from the benchmark harness, with or without its wrapped library
installed: a missing library degrades to error responses, never to a
protocol violation.
"""

import json
import os
import shutil
import sys
import textwrap

import pytest

from byline_bench import run_conformance

from shim_fixtures import CONSOLE_SCRIPTS, SHIM_MODULES, ShimSession, shim_command


@pytest.fixture
def session_factory():
    sessions = []

    def make(command, env=None):
        session = ShimSession(command, env=env)
        sessions.append(session)
        return session

    yield make
    for session in sessions:
        if session.proc.poll() is None:
            session.proc.kill()
        session.proc.wait()

META_FIXTURE = (
    '<html><head><meta name="author" content="Jane Doe"></head>'
    "<body><p>By Jane Doe</p><p>Body text.</p></body></html>"
)


@pytest.mark.parametrize("name", sorted(SHIM_MODULES))
def test_shim_passes_protocol_conformance(name):
    report = run_conformance(shim_command(name), timeout=30.0)
    assert report.failures == []
    assert report.passed
    assert report.name == name
    assert report.handshake_ok
    assert report.id_echo_ok
    assert report.single_response_ok
    assert report.fault_path_ok


@pytest.mark.parametrize("name", sorted(CONSOLE_SCRIPTS))
def test_console_script_installed(name):
    assert shutil.which(CONSOLE_SCRIPTS[name]) is not None


def test_handshake_names_match_tool_names(session_factory):
    for name in sorted(SHIM_MODULES):
        session = session_factory(shim_command(name))
        hello = session.handshake()
        assert hello == {"protocol": "byline-adapter/1", "name": name}
        session.close()


def test_shim_stays_alive_across_many_requests(session_factory):
    session = session_factory(shim_command("trafilatura"))
    session.handshake()
    for i in range(5):
        response = session.ask(f"d{i}", META_FIXTURE)
        assert response["id"] == f"d{i}"
        assert isinstance(response["authors"], list)
        assert all(isinstance(a, str) for a in response["authors"])
    assert session.proc.poll() is None
    session.close()


def write_stub_trafilatura(tmp_path, body):
    """Shadow trafilatura with a stub package via PYTHONPATH."""
    package = tmp_path / "trafilatura"
    package.mkdir()
    (package / "__init__.py").write_text("from . import metadata\n", encoding="utf-8")
    (package / "metadata.py").write_text(textwrap.dedent(body), encoding="utf-8")
    env = dict(os.environ)
    env["PYTHONPATH"] = str(tmp_path) + os.pathsep + env.get("PYTHONPATH", "")
    return env


class TestStubbedEndToEnd:
    """Wire-level behavior with a deterministic stand-in library,
    independent of what happens to be installed."""

    def test_meta_author_travels_back_verbatim(self, tmp_path, session_factory):
        env = write_stub_trafilatura(tmp_path, '''
            class _Doc:
                def __init__(self, author):
                    self.author = author

            def extract_metadata(html, default_url=None):
                if "Jane Doe" in html:
                    return _Doc("Jane Doe")
                return None
        ''')
        session = session_factory(shim_command("trafilatura"), env=env)
        session.handshake()
        response = session.ask("d1", META_FIXTURE, url="https://news.example/a")
        assert response == {"id": "d1", "authors": ["Jane Doe"], "error": None}
        session.close()

    def test_empty_body_page_yields_no_authors_and_no_error(self, tmp_path, session_factory):
        env = write_stub_trafilatura(tmp_path, '''
            def extract_metadata(html, default_url=None):
                return None
        ''')
        session = session_factory(shim_command("trafilatura"), env=env)
        session.handshake()
        response = session.ask("d1", "<html><body></body></html>")
        assert response == {"id": "d1", "authors": [], "error": None}
        session.close()

    def test_library_exception_becomes_error_response(self, tmp_path, session_factory):
        env = write_stub_trafilatura(tmp_path, '''
            def extract_metadata(html, default_url=None):
                raise RuntimeError("parse failure")
        ''')
        session = session_factory(shim_command("trafilatura"), env=env)
        session.handshake()
        response = session.ask("d1", META_FIXTURE)
        assert response["authors"] == []
        assert "parse failure" in response["error"]
        # Next document still gets served.
        follow_up = session.ask("d2", META_FIXTURE)
        assert follow_up["id"] == "d2"
        session.close()

    def test_null_url_is_synthesized_before_the_library_sees_it(self, tmp_path, session_factory):
        env = write_stub_trafilatura(tmp_path, '''
            class _Doc:
                def __init__(self, author):
                    self.author = author

            def extract_metadata(html, default_url=None):
                if not default_url:
                    raise AssertionError("expected a url")
                return _Doc(default_url)
        ''')
        session = session_factory(shim_command("trafilatura"), env=env)
        session.handshake()
        response = session.ask("d1", META_FIXTURE, url=None)
        assert response["error"] is None
        assert response["authors"] == ["https://placeholder.invalid/article"]
        session.close()

    def test_responses_are_utf8_json_lines(self, tmp_path, session_factory):
        env = write_stub_trafilatura(tmp_path, '''
            class _Doc:
                def __init__(self, author):
                    self.author = author

            def extract_metadata(html, default_url=None):
                return _Doc("Иван Петров")
        ''')
        session = session_factory(shim_command("trafilatura"), env=env)
        session.handshake()
        session._send({"id": "d1", "html": "<p></p>", "url": None, "language": "ru"})
        raw = session.proc.stdout.readline()
        assert "Иван Петров" in raw
        assert json.loads(raw)["authors"] == ["Иван Петров"]
        session.close()
