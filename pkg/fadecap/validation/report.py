"""
Validation reports - one row per numerical check
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pyarrow as pa

COMPARISONS = ("abs", "rel", "le", "ge")


@dataclass
class CheckResult:
    """A single check: measured against expected under a tolerance."""
    name: str
    measured: float
    expected: float
    tolerance: float
    comparison: str = "abs"
    passed: bool = False
    duration_ms: float = 0.0
    details: Dict[str, Any] = field(default_factory=dict)

    def evaluate(self) -> bool:
        m, e, tol = self.measured, self.expected, self.tolerance
        if not (math.isfinite(m) and math.isfinite(e)):
            self.passed = False
        elif self.comparison == "abs":
            self.passed = abs(m - e) <= tol
        elif self.comparison == "rel":
            self.passed = abs(m - e) <= tol * abs(e)
        elif self.comparison == "le":
            self.passed = m <= e + tol
        elif self.comparison == "ge":
            self.passed = m >= e - tol
        else:
            raise ValueError(f"comparison must be one of {COMPARISONS}, got {self.comparison!r}")
        return self.passed

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


@dataclass
class ValidationReport:
    """Checks run by one validation suite."""
    suite: str
    start_time: datetime.datetime = field(default_factory=datetime.datetime.now)
    end_time: Optional[datetime.datetime] = None
    total_duration_ms: float = 0.0
    checks: List[CheckResult] = field(default_factory=list)

    def add_check(
        self,
        name: str,
        measured: float,
        expected: float,
        tolerance: float,
        comparison: str = "abs",
        started: datetime.datetime = None,
        **details,
    ) -> CheckResult:
        check = CheckResult(
            name=name,
            measured=float(measured),
            expected=float(expected),
            tolerance=float(tolerance),
            comparison=comparison,
            details=details,
        )
        check.evaluate()
        if started is not None:
            check.duration_ms = (datetime.datetime.now() - started).total_seconds() * 1000
        self.checks.append(check)
        return check

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.checks.extend(other.checks)
        return self

    def finish(self):
        self.end_time = datetime.datetime.now()
        self.total_duration_ms = (self.end_time - self.start_time).total_seconds() * 1000

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_table(self) -> pa.Table:
        """Report rows without timings, so reruns serialize identically."""
        return pa.table({
            "name": pa.array([c.name for c in self.checks], type=pa.string()),
            "measured": pa.array([c.measured for c in self.checks], type=pa.float64()),
            "expected": pa.array([c.expected for c in self.checks], type=pa.float64()),
            "tolerance": pa.array([c.tolerance for c in self.checks], type=pa.float64()),
            "status": pa.array([c.status for c in self.checks], type=pa.string()),
        })

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "total_duration_ms": self.total_duration_ms,
            "checks": [
                {
                    "name": c.name,
                    "measured": c.measured,
                    "expected": c.expected,
                    "tolerance": c.tolerance,
                    "comparison": c.comparison,
                    "status": c.status,
                    "duration_ms": c.duration_ms,
                    "details": c.details,
                } for c in self.checks
            ],
        }

    def format_text(self) -> str:
        """Human-readable summary with timings."""
        lines = [f"Validation suite: {self.suite}"]
        lines.append(f"Total Duration: {self.total_duration_ms:.2f}ms")
        lines.append("-" * 50)
        for check in self.checks:
            lines.append(f"[{check.status}] {check.name}")
            lines.append(
                f"   measured={check.measured:.12g} expected={check.expected:.12g} "
                f"({check.comparison}, tol={check.tolerance:.3g})"
            )
            lines.append(f"   Duration: {check.duration_ms:.2f}ms")
            for k, v in check.details.items():
                lines.append(f"   {k}: {v}")
        lines.append("-" * 50)
        lines.append(f"{len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed")
        return "\n".join(lines)
