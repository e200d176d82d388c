"""Structured pass/fail records for identity verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    identity_id: str
    law: str  # the identity as a human-readable formula
    dimension: int
    degree_cap: int
    status: str  # "pass" | "fail"
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        d = {
            "identity_id": self.identity_id,
            "law": self.law,
            "dimension": self.dimension,
            "degree_cap": self.degree_cap,
            "status": self.status,
        }
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class VerificationReport:
    scope: str  # "scalar" | "spinor" | "entropy"
    n: int
    degree_cap: int
    checks: list = field(default_factory=list)

    def add(self, identity_id: str, law: str, ok: bool, counterexample=None):
        self.checks.append(
            CheckResult(
                identity_id=identity_id,
                law=law,
                dimension=self.n,
                degree_cap=self.degree_cap,
                status="pass" if ok else "fail",
                counterexample=None if ok else counterexample,
            )
        )

    @property
    def all_passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if c.status != "pass"]

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "dimension": self.n,
            "degree_cap": self.degree_cap,
            "all_passed": self.all_passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True, default=str)

    def summary_lines(self) -> list:
        return [
            f"[{c.status.upper():4s}] {c.identity_id}: {c.law}" for c in self.checks
        ]
