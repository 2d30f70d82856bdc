"""Structured results of identity-verification suites."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

__all__ = ["Check", "Report", "timed_check"]


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    lhs: str
    rhs: str
    equal: bool
    ms: float


@dataclass
class Report:
    suite: str
    context: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.equal)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.equal)

    def ok(self) -> bool:
        return self.failed == 0

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(f"{prefix}{c.id}", c.description, c.lhs, c.rhs, c.equal, c.ms)
            )

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "context": dict(self.context),
            "checks": [
                {"id": c.id, "desc": c.description, "equal": c.equal, "ms": c.ms}
                for c in self.checks
            ],
            "summary": {"passed": self.passed, "failed": self.failed},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  context {self.context}"]
        for c in self.checks:
            mark = "ok " if c.equal else "FAIL"
            lines.append(f"  [{mark}] {c.id}  {c.description}  ({c.ms:.2f} ms)")
            if not c.equal:
                lines.append(f"         lhs: {c.lhs}")
                lines.append(f"         rhs: {c.rhs}")
        lines.append(f"summary: {self.passed} passed, {self.failed} failed")
        return "\n".join(lines)


def timed_check(check_id: str, description: str, build) -> Check:
    """Run build() -> (lhs, rhs), compare, and record the elapsed time."""
    start = time.perf_counter()
    lhs, rhs = build()
    equal = lhs == rhs
    ms = (time.perf_counter() - start) * 1000.0
    return Check(check_id, description, repr(lhs), repr(rhs), equal, ms)
