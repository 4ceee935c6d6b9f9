from __future__ import annotations

import shutil
import socket
import threading
import time
from contextlib import contextmanager
from pathlib import Path
from types import SimpleNamespace

import httpx
import pytest

from cloudide.config import SandboxSettings, ServiceConfig, load_config
from cloudide.service import create_app

HAVE_JDK = bool(shutil.which("javac")) and bool(shutil.which("java"))

# Probe-only stand-in used when the host has no JVM: the service can still
# boot (the probe answers) but any Java compile fails loudly and honestly.
_JAVA_STUB = """#!/bin/sh
case "$1" in
  -version|--version) echo "javastub 0.0 (probe only)"; exit 0;;
esac
echo "javastub: no JVM available on this host" >&2
exit 1
"""

needs_jdk = pytest.mark.skipif(
    not HAVE_JDK, reason="no javac/java on this host")


def _write_java_stub(directory: Path) -> Path:
    stub = directory / "javastub"
    stub.write_text(_JAVA_STUB, encoding="utf-8")
    stub.chmod(0o755)
    return stub


def build_config(data_root: Path, java_stub: Path | None = None,
                 **overrides) -> ServiceConfig:
    cfg = load_config()
    cfg.data_root = data_root
    if not HAVE_JDK:
        if java_stub is None:
            raise RuntimeError("tests on a JVM-less host need the java stub")
        s = str(java_stub)
        cfg.toolchains["java"] = {
            "compile": [s, "{src}"],
            "run": [s, "{out}", "{args}"],
            "probe": [s, "-version"],
        }
    for key, value in overrides.items():
        setattr(cfg, key, value)
    return cfg


@pytest.fixture(scope="session")
def java_stub(tmp_path_factory) -> Path:
    return _write_java_stub(tmp_path_factory.mktemp("stub"))


@pytest.fixture()
def service_config(tmp_path, java_stub) -> ServiceConfig:
    return build_config(tmp_path / "data", java_stub)


@pytest.fixture()
def client(service_config):
    from fastapi.testclient import TestClient

    app = create_app(service_config)
    with TestClient(app, raise_server_exceptions=False) as tc:
        yield tc


def _free_port() -> int:
    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        return sock.getsockname()[1]


@pytest.fixture(scope="session")
def live_server(tmp_path_factory, java_stub):
    """One real uvicorn instance shared by harness and acceptance tests.

    Short wall timeout keeps the runaway-program checks quick while leaving
    plenty of headroom for the corpus programs.
    """
    import uvicorn

    root = tmp_path_factory.mktemp("live")
    cfg = build_config(
        root / "data", java_stub,
        sandbox=SandboxSettings(wall_timeout_ms=1500, output_cap_bytes=65536,
                                max_concurrent_jobs=4))
    app = create_app(cfg)
    port = _free_port()
    server = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port,
                                           log_level="warning"))
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    endpoint = "http://127.0.0.1:%d" % port
    deadline = time.monotonic() + 20
    while time.monotonic() < deadline:
        try:
            if httpx.get(endpoint + "/healthz", timeout=1.0).status_code == 200:
                break
        except httpx.TransportError:
            time.sleep(0.05)
    else:
        raise RuntimeError("live server did not come up")
    yield SimpleNamespace(endpoint=endpoint, config=cfg, app=app)
    server.should_exit = True
    thread.join(timeout=10)


# ----- acceptance criterion bookkeeping -------------------------------------

_ACCEPTANCE_RESULTS: list[tuple[str, str, str]] = []


@pytest.fixture(scope="session")
def acceptance():
    """Context manager factory: wraps one criterion check and records its
    verdict for the end-of-run summary."""

    @contextmanager
    def record(criterion: str):
        try:
            yield
        except pytest.skip.Exception as exc:
            _ACCEPTANCE_RESULTS.append((criterion, "SKIP", str(exc)))
            raise
        except BaseException as exc:
            _ACCEPTANCE_RESULTS.append((criterion, "FAIL", str(exc)[:300]))
            raise
        else:
            _ACCEPTANCE_RESULTS.append((criterion, "PASS", ""))

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, status, detail in _ACCEPTANCE_RESULTS:
        line = "[ACCEPTANCE] %s: %s" % (criterion, status)
        if detail and status != "PASS":
            line += "  (%s)" % detail
        terminalreporter.write_line(line)
