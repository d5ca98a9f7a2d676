"""Structured pass/fail reports produced by the randomized checkers.

The canonical JSON serialization is byte-deterministic for a fixed seed and
configuration: per-record wall times are kept out of it and only appear in
the human-readable rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    """Outcome of one verified law.

    ``expected_fail`` marks a deliberately corrupted negative control: the
    record passes when the underlying violation exceeds tolerance.
    """

    name: str
    max_violation: float
    tolerance: float
    detail: str = ""
    expected_fail: bool = False
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        violated = self.max_violation > self.tolerance
        return violated if self.expected_fail else not violated

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_violation": _round_float(self.max_violation),
            "tolerance": self.tolerance,
            "detail": self.detail,
            "expected_fail": self.expected_fail,
            "passed": self.passed,
        }


def _round_float(x: float) -> float:
    # canonical representation; avoids last-bit jitter from thread timing
    # sensitive reductions while staying far below every check tolerance
    if x == 0.0:
        return 0.0
    return float(f"{x:.12e}")


@dataclass
class Report:
    """A list of check records plus the environment that produced them."""

    title: str
    seed: int
    samples: int
    records: list[CheckRecord] = field(default_factory=list)
    environment: dict = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def check(
        self,
        name: str,
        max_violation: float,
        tolerance: float,
        detail: str = "",
        expected_fail: bool = False,
    ) -> CheckRecord:
        return self.add(
            CheckRecord(
                name=name,
                max_violation=float(max_violation),
                tolerance=float(tolerance),
                detail=detail,
                expected_fail=expected_fail,
            )
        )

    def extend(self, other: "Report", prefix: str = "") -> None:
        for rec in other.records:
            name = f"{prefix}{rec.name}" if prefix else rec.name
            self.add(
                CheckRecord(
                    name=name,
                    max_violation=rec.max_violation,
                    tolerance=rec.tolerance,
                    detail=rec.detail,
                    expected_fail=rec.expected_fail,
                    elapsed=rec.elapsed,
                )
            )

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "title": self.title,
            "seed": self.seed,
            "samples": self.samples,
            "environment": self.environment,
            "records": [r.to_dict() for r in self.records],
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self, show_timing: bool = False) -> str:
        lines = [f"== {self.title} (seed={self.seed}, samples={self.samples}) =="]
        width = max((len(r.name) for r in self.records), default=0)
        for r in self.records:
            status = "PASS" if r.passed else "FAIL"
            mark = " [negative control]" if r.expected_fail else ""
            timing = f"  {r.elapsed * 1e3:8.1f} ms" if show_timing else ""
            lines.append(
                f"  {status}  {r.name:<{width}}  "
                f"violation {r.max_violation:.3e} vs tol {r.tolerance:.1e}"
                f"{timing}{mark}"
            )
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"
