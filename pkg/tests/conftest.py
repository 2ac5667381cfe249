"""Shared test fixtures, including a mock completions endpoint."""

from __future__ import annotations

import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def extract_input_block(prompt: str) -> str:
    """Pull the text of the ### Input: block out of a rendered prompt."""
    marker = "### Input:\n"
    start = prompt.find(marker)
    if start == -1:
        return ""
    rest = prompt[start + len(marker) :]
    end = rest.find("\n\n")
    return rest if end == -1 else rest[:end]


def extract_hint_line(prompt: str) -> str | None:
    marker = "### Hint: "
    start = prompt.find(marker)
    if start == -1:
        return None
    rest = prompt[start + len(marker) :]
    end = rest.find("\n\n")
    return rest if end == -1 else rest[:end]


class _Handler(BaseHTTPRequestHandler):
    def do_POST(self):  # noqa: N802 (http.server API)
        length = int(self.headers.get("Content-Length", 0))
        body = json.loads(self.rfile.read(length) or b"{}")
        owner = self.server.owner  # type: ignore[attr-defined]
        with owner.lock:
            owner.requests.append({"path": self.path, "body": body})
            owner.in_flight += 1
            owner.max_concurrent = max(owner.max_concurrent, owner.in_flight)
        try:
            if owner.latency:
                time.sleep(owner.latency)
            status, payload = owner.behavior(body)
        finally:
            with owner.lock:
                owner.in_flight -= 1
        data = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)

    def log_message(self, *args):  # silence request logging
        pass


class MockCompletionServer:
    """Threaded completions endpoint with scriptable behaviour.

    ``behavior(body) -> (status, payload)`` decides each response; requests
    and peak concurrency are recorded for assertions.
    """

    def __init__(self):
        self.requests: list[dict] = []
        self.lock = threading.Lock()
        self.in_flight = 0
        self.max_concurrent = 0
        self.latency = 0.0
        self.behavior = self.default_behavior
        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), _Handler)
        self._httpd.owner = self  # type: ignore[attr-defined]
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()

    @staticmethod
    def default_behavior(body: dict):
        prompt = body.get("prompt", "")
        text = "mock translation of: " + extract_input_block(prompt)
        return 200, {"choices": [{"text": text}]}

    @property
    def url(self) -> str:
        host, port = self._httpd.server_address
        return f"http://{host}:{port}"

    def prompts(self) -> list[str]:
        with self.lock:
            return [r["body"].get("prompt", "") for r in self.requests]

    def reset_log(self) -> None:
        with self.lock:
            self.requests.clear()
            self.max_concurrent = 0

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()
        self._thread.join(timeout=5)


@pytest.fixture
def mock_server():
    server = MockCompletionServer()
    yield server
    server.stop()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One visible PASS/FAIL line per acceptance test, even when capture is on."""
    rows = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::" not in nodeid:
                continue
            if getattr(rep, "when", "call") != "call" and outcome != "error":
                continue
            rows.append((nodeid.split("::", 1)[1], "PASS" if outcome == "passed" else "FAIL"))
    if rows:
        terminalreporter.section("acceptance criteria")
        for name, status in rows:
            terminalreporter.write_line(f"{status}  {name}")
