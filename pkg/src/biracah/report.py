"""Verification report: a list of named checks, serialized losslessly as text."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

import mpmath

from .numcore import get_prec, hp_str


@dataclass(frozen=True)
class Check:
    name: str
    max_abs_err: str
    max_rel_err: str
    tolerance: str
    passed: bool

    @classmethod
    def measure(cls, name: str, abs_err, rel_err, tol) -> "Check":
        passed = bool(mpmath.mpf(rel_err) <= mpmath.mpf(tol))
        return cls(name, hp_str(abs_err), hp_str(rel_err), hp_str(tol, 3), passed)

    @classmethod
    def exact(cls, name: str, ok: bool) -> "Check":
        # exact checks either hold (error "0") or not; no tolerance applies
        err = "0" if ok else "inf"
        return cls(name, err, err, "0", ok)


@dataclass
class VerifyReport:
    context: dict
    per_check: list[Check] = field(default_factory=list)
    config: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.per_check)

    def extend(self, other: "VerifyReport") -> None:
        self.per_check.extend(other.per_check)
        for k, v in other.details.items():
            self.details[k] = v

    def failures(self) -> list[Check]:
        return [c for c in self.per_check if not c.passed]

    def to_dict(self) -> dict:
        return {
            "context": self.context,
            "passed": self.passed,
            "per_check": [_check_dict(c) for c in self.per_check],
            "config": self.config,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyReport":
        checks = [
            Check(c["name"], c["max_abs_err"], c["max_rel_err"], c["tolerance"], c["pass"]) for c in d["per_check"]
        ]
        return cls(context=d["context"], per_check=checks, config=d.get("config", {}), details=d.get("details", {}))

    @classmethod
    def from_json(cls, text: str) -> "VerifyReport":
        return cls.from_dict(json.loads(text))


def _check_dict(c: Check) -> dict:
    d = asdict(c)
    d["pass"] = d.pop("passed")
    return d


def context_dict(ctx) -> dict:
    from .numcore import rational_str

    return {
        "mu1": rational_str(ctx.mu1),
        "mu2": rational_str(ctx.mu2),
        "mu3": rational_str(ctx.mu3),
        "N": ctx.N,
        "precision": get_prec(),
    }
