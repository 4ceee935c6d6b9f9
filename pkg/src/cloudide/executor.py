"""Compile-and-run pipeline: authorize against the compile budget, stage
the source in a throwaway scratch directory, compile, optionally run
under wall-clock and output caps, capture the outcome, clean up.

Processes are launched with discrete argument vectors in their own
session (process group); no shell ever parses user input. Timeout and
output-cap kills take down the whole group, because compilers and JVMs
fork.
"""

from __future__ import annotations

import os
import re
import secrets
import shutil
import signal
import subprocess
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Union

from .errors import InternalSandboxError, TooManyArgs
from .toolchains import ToolchainRegistry, detect_language
from .workspace import WorkspaceManager

MAX_ARGV_TOKENS = 64

ExitStatus = Union[int, str, None]  # int, "timeout", "killed-output-cap"


def split_argv(argv_line: str) -> list[str]:
    """Split the argument line on runs of spaces/tabs. No quoting, no
    escaping: every token reaches the program's argv verbatim."""
    tokens = [t for t in re.split(r"[ \t]+", argv_line) if t]
    if len(tokens) > MAX_ARGV_TOKENS:
        raise TooManyArgs("at most %d argument tokens allowed" % MAX_ARGV_TOKENS)
    return tokens


@dataclass
class SandboxPolicy:
    wall_timeout_ms: int = 10_000
    output_cap_bytes: int = 65_536
    max_concurrent_jobs: int = 0  # 0 -> cpu count
    scratch_dir_per_job: bool = True  # always; kept for visibility

    def __post_init__(self):
        if self.wall_timeout_ms <= 0 or self.output_cap_bytes <= 0:
            raise ValueError("sandbox policy fields must be positive")


@dataclass
class CompileJob:
    owner_id: str
    source_rel_path: str
    argv_line: str = ""
    stdin_bytes: bytes = b""
    mode: str = "run"  # "run" | "build_artifact"


@dataclass
class CompileResult:
    compile_ok: bool
    compile_stderr: str = ""
    exit_status: ExitStatus = None
    stdout: str = ""
    stderr: str = ""
    wall_ms: int = 0
    truncated: bool = False
    artifact_rel_path: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "compile_ok": self.compile_ok,
            "compile_stderr": self.compile_stderr,
            "exit_status": self.exit_status,
            "stdout": self.stdout,
            "stderr": self.stderr,
            "wall_ms": self.wall_ms,
            "truncated": self.truncated,
            "artifact_rel_path": self.artifact_rel_path,
        }


@dataclass
class _Capture:
    status: ExitStatus
    stdout: bytes
    stderr: bytes
    wall_ms: int
    truncated: bool


class Executor:
    def __init__(self, registry: ToolchainRegistry, workspace: WorkspaceManager,
                 authorize: Callable[[], None], scratch_root: str | Path,
                 policy: SandboxPolicy | None = None):
        self.registry = registry
        self.workspace = workspace
        self.authorize = authorize
        self.scratch_root = Path(scratch_root)
        self.policy = policy or SandboxPolicy()
        jobs = self.policy.max_concurrent_jobs or (os.cpu_count() or 1)
        self._slots = threading.BoundedSemaphore(jobs)

    def run_job(self, job: CompileJob, policy: SandboxPolicy | None = None) -> CompileResult:
        """The whole pipeline for one request. Exactly one compile-budget
        authorization is attempted per invocation, before anything else."""
        policy = policy or self.policy
        self.authorize()  # raises LimitReached without incrementing
        language = detect_language(job.source_rel_path)
        args = split_argv(job.argv_line)
        spec = self.registry.toolchain_for(language)
        source = self.workspace.read_file(job.owner_id, job.source_rel_path)

        with self._slots:
            scratch = self._make_scratch()
            try:
                filename = job.source_rel_path.rsplit("/", 1)[-1]
                stem = filename.rsplit(".", 1)[0]
                src_path = scratch / filename
                src_path.write_bytes(source)
                out = spec.output_name(stem, scratch)

                compile_cap = self._execute(
                    spec.compile_argv(src_path, out, scratch), scratch, b"", policy)
                compile_stderr = _scrub_paths(
                    (compile_cap.stderr + compile_cap.stdout).decode("utf-8", "replace"),
                    scratch)
                if compile_cap.status != 0:
                    if compile_cap.status == "timeout":
                        compile_stderr = (compile_stderr + "\ncompilation timed out").strip()
                    return CompileResult(compile_ok=False, compile_stderr=compile_stderr)

                if job.mode == "build_artifact":
                    return self._collect_artifact(job, spec, stem, scratch,
                                                  compile_stderr)

                cap = self._execute(spec.run_argv(out, args, scratch), scratch,
                                    job.stdin_bytes, policy)
                return CompileResult(
                    compile_ok=True,
                    compile_stderr=compile_stderr,
                    exit_status=cap.status,
                    stdout=cap.stdout.decode("utf-8", "replace"),
                    stderr=cap.stderr.decode("utf-8", "replace"),
                    wall_ms=cap.wall_ms,
                    truncated=cap.truncated,
                )
            finally:
                shutil.rmtree(scratch, ignore_errors=True)

    def _collect_artifact(self, job: CompileJob, spec, stem: str, scratch: Path,
                          compile_stderr: str) -> CompileResult:
        built = scratch / spec.artifact_filename(stem)
        if not built.is_file():
            raise InternalSandboxError("compiler reported success but produced no artifact")
        parent, _, _name = job.source_rel_path.rpartition("/")
        artifact_rel = (parent + "/" if parent else "") + spec.artifact_filename(stem)
        node = self.workspace.place_file(job.owner_id, artifact_rel, built.read_bytes())
        return CompileResult(compile_ok=True, compile_stderr=compile_stderr,
                             artifact_rel_path=node.rel_path)

    def _make_scratch(self) -> Path:
        try:
            self.scratch_root.mkdir(parents=True, exist_ok=True)
            scratch = self.scratch_root / ("job-%s" % secrets.token_hex(16))
            scratch.mkdir(mode=0o700)
            return scratch
        except OSError as exc:
            raise InternalSandboxError("cannot create scratch directory: %s" % exc) from None

    def _execute(self, argv: list[str], cwd: Path, stdin_bytes: bytes,
                 policy: SandboxPolicy) -> _Capture:
        """Run one argument vector with capped capture and group kill."""
        start = time.monotonic()
        deadline = start + policy.wall_timeout_ms / 1000.0
        try:
            proc = subprocess.Popen(
                argv, cwd=str(cwd), stdin=subprocess.PIPE,
                stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                start_new_session=True)
        except OSError as exc:
            raise InternalSandboxError("cannot launch %r: %s" % (argv[0], exc)) from None

        sink = _OutputSink(policy.output_cap_bytes)
        readers = [
            threading.Thread(target=sink.drain, args=(proc.stdout, 0), daemon=True),
            threading.Thread(target=sink.drain, args=(proc.stderr, 1), daemon=True),
        ]
        for t in readers:
            t.start()
        writer = threading.Thread(target=_feed_stdin, args=(proc, stdin_bytes), daemon=True)
        writer.start()

        status: ExitStatus = None
        while True:
            rc = proc.poll()
            if rc is not None:
                status = rc
                break
            if sink.overflowed.is_set():
                _kill_group(proc)
                proc.wait()
                status = "killed-output-cap"
                break
            if time.monotonic() >= deadline:
                _kill_group(proc)
                proc.wait()
                status = "timeout"
                break
            time.sleep(0.005)

        # Orphaned grandchildren can hold the pipes open past the child's
        # exit; give the readers a moment, then take the group down.
        for t in readers:
            t.join(timeout=0.25)
        if any(t.is_alive() for t in readers):
            _kill_group(proc)
            for stream in (proc.stdout, proc.stderr):
                try:
                    stream.close()
                except OSError:
                    pass
            for t in readers:
                t.join(timeout=0.25)
        writer.join(timeout=0.25)

        wall_ms = int((time.monotonic() - start) * 1000)
        out, err, truncated = sink.collected()
        return _Capture(status=status, stdout=out, stderr=err,
                        wall_ms=wall_ms, truncated=truncated)


class _OutputSink:
    """Accumulates two streams under one shared byte budget; keeps reading
    (and discarding) after the cap so the child never blocks on a full
    pipe, and flags the overflow so the caller can kill the group."""

    def __init__(self, cap: int):
        self.cap = cap
        self.overflowed = threading.Event()
        self._lock = threading.Lock()
        self._buffers = [bytearray(), bytearray()]
        self._total = 0

    def drain(self, stream, index: int) -> None:
        try:
            while True:
                chunk = stream.read1(65536) if hasattr(stream, "read1") else stream.read(65536)
                if not chunk:
                    return
                with self._lock:
                    room = self.cap - self._total
                    if room > 0:
                        self._buffers[index] += chunk[:room]
                    self._total += len(chunk)
                    if self._total > self.cap:
                        self.overflowed.set()
        except (OSError, ValueError):
            return

    def collected(self) -> tuple[bytes, bytes, bool]:
        with self._lock:
            truncated = self._total > self.cap
            return bytes(self._buffers[0]), bytes(self._buffers[1]), truncated


def _feed_stdin(proc: subprocess.Popen, data: bytes) -> None:
    try:
        if data:
            proc.stdin.write(data)
        proc.stdin.close()
    except (OSError, ValueError):
        pass


def _kill_group(proc: subprocess.Popen) -> None:
    try:
        os.killpg(proc.pid, signal.SIGKILL)
    except (ProcessLookupError, PermissionError):
        try:
            proc.kill()
        except ProcessLookupError:
            pass


def _scrub_paths(text: str, scratch: Path) -> str:
    # Compiler diagnostics carry the scratch prefix; strip it so responses
    # never expose server-side absolute paths.
    return text.replace(str(scratch) + os.sep, "").replace(str(scratch), "")
