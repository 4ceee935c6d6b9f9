"""Verification harness: similarity and functional suites that exercise a
running backend over HTTP and score how closely it matches reference
behaviour."""

from .corpus import SIMILARITY_CASES, SimilarityCase
from .functional import run_functional_suite
from .metric import CaseResult, TestReport, success_percentage
from .report import render_text, write_report_dir
from .similarity import run_similarity_suite

__all__ = [
    "SIMILARITY_CASES", "SimilarityCase", "TestReport", "CaseResult",
    "success_percentage", "run_similarity_suite", "run_functional_suite",
    "render_text", "write_report_dir",
]
