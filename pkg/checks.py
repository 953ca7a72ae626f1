"""
Check records: the validation vocabulary shared by every cerf-forge module.

Validators never raise on bad input. They build a list of `Check` records
and hand back a `CheckReport`; callers decide whether a failure is fatal.

Usage pattern:

    from checks import Check, CheckReport

    report = CheckReport.from_checks([
        Check("isotropic", passed=pairings_vanish, detail="<a1, a1+b2> = 1"),
        Check("unimodular", passed=snf_is_identity),
    ])
    if not report.ok:
        for check in report.failures:
            ...

Design rule enforced here:
  - A report is a plain immutable value. It never logs and never prints;
    `log_failures` is the one place that turns failed checks into stderr
    lines, so the CLI and the dashboard share the same wording.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable


class CerfError(Exception):
    """Base class for every error raised by cerf-forge.

    `code` is a stable machine-readable tag (e.g. "DUPLICATE_HEIGHT");
    the message is for humans.
    """

    code = "CERF_ERROR"

    def __init__(self, message: str, code: str | None = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def find_failures(checks: Iterable[Check]) -> list[Check]:
    """Return the checks that did not pass, in input order."""
    return [c for c in checks if not c.passed]


@dataclass(frozen=True)
class CheckReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @classmethod
    def from_checks(cls, checks: Iterable[Check]) -> "CheckReport":
        return cls(tuple(checks))

    @property
    def ok(self) -> bool:
        return not find_failures(self.checks)

    @property
    def failures(self) -> list[Check]:
        return find_failures(self.checks)

    def merged(self, other: "CheckReport", prefix: str = "") -> "CheckReport":
        extra = tuple(
            Check(f"{prefix}{c.name}", c.passed, c.detail) for c in other.checks
        )
        return CheckReport(self.checks + extra)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
        }


def log_failures(report: CheckReport, logger: logging.Logger, subject: str) -> bool:
    """Log one warning per failed check. Returns True when the report is clean."""
    broken = report.failures
    for c in broken:
        suffix = f" ({c.detail})" if c.detail else ""
        logger.warning("%s: check %s failed%s", subject, c.name, suffix)
    return not broken
