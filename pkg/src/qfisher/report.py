"""Structured verification results and their JSON Lines form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any


def _clean(value: Any) -> Any:
    # numpy scalars and arrays leak in from the numeric code
    if hasattr(value, "tolist"):
        value = value.tolist()
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


@dataclass
class CheckReport:
    """Outcome of one verification.

    ``passed`` is always equivalent to ``margin >= -tolerance``; constructing
    a report that breaks this raises ``ValueError``.
    """

    check: str
    f_name: str
    dim: int
    seed: int
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: bool
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.margin = float(self.margin)
        self.tolerance = float(self.tolerance)
        self.passed = bool(self.passed)
        if self.passed != (self.margin >= -self.tolerance):
            raise ValueError(
                f"inconsistent report {self.check!r}: pass={self.passed} "
                f"but margin={self.margin!r}, tolerance={self.tolerance!r}"
            )

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "f_name": self.f_name,
            "dim": int(self.dim),
            "seed": int(self.seed),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "details": _clean(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: dict) -> "CheckReport":
        return cls(
            check=d["check"],
            f_name=d["f_name"],
            dim=d["dim"],
            seed=d["seed"],
            lhs=d["lhs"],
            rhs=d["rhs"],
            margin=d["margin"],
            tolerance=d["tolerance"],
            passed=d["pass"],
            details=d.get("details", {}),
        )

    @classmethod
    def from_json(cls, line: str) -> "CheckReport":
        return cls.from_dict(json.loads(line))


def bounded_report(
    check: str,
    f_name: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    *,
    dim: int = 0,
    seed: int = 0,
    details: dict | None = None,
) -> CheckReport:
    """Report for the claim ``lhs <= rhs`` up to ``tolerance``."""
    margin = float(rhs) - float(lhs)
    return CheckReport(
        check=check,
        f_name=f_name,
        dim=dim,
        seed=seed,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        tolerance=tolerance,
        passed=margin >= -tolerance,
        details=details or {},
    )
