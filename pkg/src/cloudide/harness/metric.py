"""Scoring for verification runs.

The headline number is the share of checks whose observed behaviour was
identical to the expected behaviour, as a percentage. It is computed with
exact rational arithmetic so 15/15 is exactly 100.0 and k*d/k*t never
drifts from d/t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidCounts


def success_percentage(detected: int, tested: int) -> float:
    """detected identical outcomes out of tested checks, as a percentage."""
    if not isinstance(tested, int) or not isinstance(detected, int):
        raise InvalidCounts("counts must be integers")
    if tested <= 0:
        raise InvalidCounts("tested must be positive")
    if detected < 0 or detected > tested:
        raise InvalidCounts("detected must lie in [0, tested]")
    return float(Fraction(detected, tested) * 100)


@dataclass
class CaseResult:
    name: str
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class TestReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.cases.append(CaseResult(name, ok, detail))

    @property
    def tested(self) -> int:
        return len(self.cases)

    @property
    def detected(self) -> int:
        return sum(1 for c in self.cases if c.ok)

    @property
    def sp(self) -> float:
        return success_percentage(self.detected, self.tested)

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.ok]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "tested": self.tested,
            "detected": self.detected,
            "success_percentage": self.sp,
            "cases": [c.to_dict() for c in self.cases],
        }
