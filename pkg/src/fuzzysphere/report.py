"""Structured pass/fail records shared by all verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["CheckRecord", "Report"]


@dataclass
class CheckRecord:
    """One verified relation, bound or value, keyed by its check tag."""

    tag: str
    lam: int | None = None
    m: int | None = None
    value: float | None = None
    bound: float | None = None
    residual: float | None = None
    passed: bool = True

    def to_dict(self):
        d = {"tag": self.tag, "lambda": self.lam, "value": self.value, "pass": self.passed}
        if self.m is not None:
            d["m"] = self.m
        if self.bound is not None:
            d["bound"] = self.bound
        if self.residual is not None:
            d["residual"] = self.residual
        return d


@dataclass
class Report:
    checks: list[CheckRecord] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    version: str = "0.1.0"

    def add(self, record: CheckRecord) -> CheckRecord:
        self.checks.append(record)
        return record

    def add_residual(self, tag, residual, tol, lam=None, m=None, value=None):
        return self.add(CheckRecord(tag=tag, lam=lam, m=m, value=value,
                                    residual=float(residual), bound=float(tol),
                                    passed=bool(residual <= tol)))

    def extend(self, other: "Report"):
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.checks)
        return {"passed": n_pass, "failed": len(self.checks) - n_pass}

    def first_failure(self) -> CheckRecord | None:
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def to_dict(self, timestamp: str | None = None) -> dict:
        d = {
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary,
            "version": self.version,
        }
        if timestamp is not None:
            d["timestamp"] = timestamp
        return d

    def to_json(self, timestamp: str | None = None) -> str:
        return json.dumps(self.to_dict(timestamp), indent=2, sort_keys=True)
