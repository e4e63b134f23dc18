"""Verification records and their JSON form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

MAX_LISTED = 50


def plain(obj):
    """Convert numpy scalars/arrays inside ``obj`` to built-in types."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [plain(v) for v in items]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


@dataclass
class VerificationReport:
    """Outcome of one check.

    A failed report always carries at least one counterexample expressed in
    element indices.  At most :data:`MAX_LISTED` counterexamples are kept;
    ``details["counterexample_count"]`` has the full tally.
    """

    check: str
    anchor: str
    passed: bool
    witnesses: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed_ms: int | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "check": self.check,
            "anchor": self.anchor,
            "verdict": self.verdict,
            "witnesses": plain(self.witnesses),
            "counterexamples": plain(self.counterexamples),
            "details": plain(self.details),
        }
        if timings and self.elapsed_ms is not None:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def make_report(check, anchor, failures, *, witnesses=None, details=None,
                total=None) -> VerificationReport:
    """Build a report from a (possibly long) failure list."""
    failures = list(failures)
    details = dict(details or {})
    details["counterexample_count"] = len(failures) if total is None else total
    return VerificationReport(
        check=check,
        anchor=anchor,
        passed=not failures,
        witnesses=list(witnesses or []),
        counterexamples=failures[:MAX_LISTED],
        details=details,
    )


class timed:
    """Context manager stamping ``elapsed_ms`` onto the report it yields to."""

    def __init__(self):
        self.elapsed_ms = None

    def __enter__(self):
        self._t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed_ms = int(round((time.perf_counter() - self._t0) * 1000))
        return False

    def stamp(self, report: VerificationReport) -> VerificationReport:
        report.elapsed_ms = self.elapsed_ms
        return report


@dataclass
class RunReport:
    subject: str
    config: dict
    records: list[VerificationReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def add(self, report: VerificationReport) -> VerificationReport:
        self.records.append(report)
        return report

    def __getitem__(self, check: str) -> VerificationReport:
        for r in self.records:
            if r.check == check:
                return r
        raise KeyError(check)

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "subject": self.subject,
            "config": plain(self.config),
            "summary": {
                "verdict": "pass" if self.passed else "fail",
                "checks": len(self.records),
                "failed": [r.check for r in self.records if not r.passed],
            },
            "records": [r.to_dict(timings) for r in self.records],
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), indent=2, sort_keys=True,
                          ensure_ascii=False) + "\n"
