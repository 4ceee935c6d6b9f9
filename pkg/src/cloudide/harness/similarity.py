"""Similarity suite: does the service execute programs exactly like the
host toolchain does?

Each corpus case is uploaded to a throwaway account, run through the
service, and compared byte for byte (stdout) plus exit status against an
independent local reference execution.
"""

from __future__ import annotations

import secrets
from typing import Iterable, Optional

from ..errors import ToolchainMissing, VerificationFailed
from .client import ApiClient
from .corpus import SIMILARITY_CASES, SimilarityCase
from .metric import TestReport
from .oracle import reference_execution, toolchain_available

_WORK_FOLDER = "similarity"


def _case_matches(client: ApiClient, token: str, case: SimilarityCase) -> tuple[bool, str]:
    expected = reference_execution(case)

    rel = "%s/%s" % (_WORK_FOLDER, case.filename)
    created = client.fs_create(token, rel, "file")
    if created.status_code != 200:
        return False, "create failed: %s" % created.text[:200]
    wrote = client.fs_write(token, rel, case.source.encode("utf-8"))
    if wrote.status_code != 200:
        return False, "write failed: %s" % wrote.text[:200]
    ran = client.run(token, rel, args=case.args, stdin=case.stdin)
    if ran.status_code != 200:
        return False, "run failed: %s" % ran.text[:200]
    body = ran.json()
    if not body.get("compile_ok"):
        return False, "service compile failed: %s" % body.get("compile_stderr", "")[:300]
    if body.get("exit_status") != expected.exit_status:
        return False, ("exit status %r, reference %r"
                       % (body.get("exit_status"), expected.exit_status))
    if body.get("stdout") != expected.stdout:
        return False, ("stdout mismatch: service %r, reference %r"
                       % (body.get("stdout", "")[:200], expected.stdout[:200]))
    return True, ""


def run_similarity_suite(endpoint: str,
                         languages: Optional[Iterable[str]] = None) -> TestReport:
    """Run the corpus against a live endpoint; returns the per-case report.

    languages restricts the corpus (e.g. {"c", "cpp"}); default is all of it.
    """
    wanted = set(languages) if languages else None
    cases = [c for c in SIMILARITY_CASES if wanted is None or c.language in wanted]
    if not cases:
        raise VerificationFailed("language filter selected no cases")

    missing = sorted({c.language for c in cases if not toolchain_available(c.language)})
    if missing:
        raise ToolchainMissing(
            "no local toolchain for the reference runs: %s" % ", ".join(missing))

    report = TestReport("similarity")
    with ApiClient(endpoint) as client:
        suffix = secrets.token_hex(4)
        username = "sim-%s" % suffix
        password = "harness-%s" % secrets.token_hex(8)
        registered = client.register(username, "%s@harness.local" % username, password)
        if registered.status_code != 200:
            raise VerificationFailed("cannot register harness user: %s"
                                     % registered.text[:200])
        login = client.login(username, password)
        if login.status_code != 200:
            raise VerificationFailed("cannot log in harness user: %s"
                                     % login.text[:200])
        token = login.json()["token"]
        client.fs_create(token, _WORK_FOLDER, "folder")

        for case in cases:
            try:
                ok, detail = _case_matches(client, token, case)
            except Exception as exc:  # oracle or transport trouble is a finding too
                ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
            report.add(case.name, ok, detail)
        client.logout(token)
    return report
