"""Reference execution for similarity cases.

Deliberately independent of the service's execution pipeline: it shells out
to the local compilers directly with its own command lines, so agreement
between the two paths actually means something.
"""

from __future__ import annotations

import shutil
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path

from ..errors import ToolchainMissing
from .corpus import SimilarityCase

_COMPILERS = {"c": "gcc", "cpp": "g++", "java": "javac"}


@dataclass(frozen=True)
class OracleResult:
    stdout: str
    exit_status: int


def toolchain_available(language: str) -> bool:
    if language == "java":
        return bool(shutil.which("javac")) and bool(shutil.which("java"))
    return bool(shutil.which(_COMPILERS[language]))


def reference_execution(case: SimilarityCase, timeout: float = 60.0) -> OracleResult:
    """Compile and run the case against the host toolchain directly."""
    if not toolchain_available(case.language):
        raise ToolchainMissing("no local %s toolchain for the oracle run"
                               % case.language)
    argv_extra = case.args.split() if case.args else []
    with tempfile.TemporaryDirectory(prefix="oracle-") as tmp:
        workdir = Path(tmp)
        src = workdir / case.filename
        src.write_text(case.source, encoding="utf-8")
        if case.language == "java":
            compile_cmd = ["javac", "-d", str(workdir), str(src)]
            run_cmd = ["java", "-cp", str(workdir), src.stem] + argv_extra
        else:
            out = workdir / src.stem
            compiler = _COMPILERS[case.language]
            compile_cmd = [compiler, str(src), "-O2", "-o", str(out)]
            run_cmd = [str(out)] + argv_extra

        compiled = subprocess.run(compile_cmd, capture_output=True, timeout=timeout)
        if compiled.returncode != 0:
            raise ToolchainMissing(
                "oracle compile failed for %s: %s"
                % (case.name, compiled.stderr.decode("utf-8", "replace")[:500]))
        ran = subprocess.run(run_cmd, input=case.stdin.encode("utf-8"),
                             capture_output=True, timeout=timeout, cwd=workdir)
        return OracleResult(stdout=ran.stdout.decode("utf-8", "replace"),
                            exit_status=ran.returncode)
