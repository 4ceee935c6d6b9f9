"""Report rendering for verification runs: terminal text, delimited CSV,
and PNG charts written next to it.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # file output only; never require a display

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

from .metric import TestReport

_PASS_COLOR = "#2e7d32"
_FAIL_COLOR = "#c62828"


def render_text(report: TestReport) -> str:
    lines = ["suite: %s" % report.suite]
    for case in report.cases:
        mark = "PASS" if case.ok else "FAIL"
        line = "  [%s] %s" % (mark, case.name)
        if case.detail:
            line += "  (%s)" % case.detail
        lines.append(line)
    lines.append("tested=%d detected=%d success_percentage=%s"
                 % (report.tested, report.detected, report.sp))
    return "\n".join(lines) + "\n"


def write_csv(report: TestReport, path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["case", "outcome", "detail"])
        for case in report.cases:
            writer.writerow([case.name, "pass" if case.ok else "fail", case.detail])
    return path


def _cases_figure(report: TestReport, path: Path) -> Path:
    names = [c.name for c in report.cases]
    values = [1] * len(names)
    colors = [_PASS_COLOR if c.ok else _FAIL_COLOR for c in report.cases]

    height = max(2.5, 0.4 * len(names) + 1.2)
    fig, ax = plt.subplots(figsize=(8, height))
    ax.barh(range(len(names)), values, color=colors, edgecolor="none")
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    ax.set_xlim(0, 1.35)
    for i, case in enumerate(report.cases):
        ax.text(1.02, i, "pass" if case.ok else "fail", va="center", fontsize=8,
                color=colors[i])
    ax.set_title("%s suite: per-check outcome" % report.suite)
    for spine in ax.spines.values():
        spine.set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _summary_figure(report: TestReport, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.barh([0], [report.sp], color=_PASS_COLOR, height=0.5)
    ax.barh([0], [100 - report.sp], left=[report.sp], color="#e0e0e0", height=0.5)
    ax.set_xlim(0, 100)
    ax.set_yticks([])
    ax.set_xlabel("success percentage")
    ax.set_title("%s suite: %d/%d identical (%.1f%%)"
                 % (report.suite, report.detected, report.tested, report.sp))
    for spine in ("top", "right", "left"):
        ax.spines[spine].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_report_dir(report: TestReport, out_dir: str | Path) -> list[Path]:
    """CSV plus the two charts, named after the suite. Returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return [
        write_csv(report, out / ("%s.csv" % report.suite)),
        _cases_figure(report, out / ("%s_cases.png" % report.suite)),
        _summary_figure(report, out / ("%s_summary.png" % report.suite)),
    ]
