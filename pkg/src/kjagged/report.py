"""Pass/fail records for identity and recurrence checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .series import BivariateSeries, PowerSeries, first_difference


@dataclass
class IdentityReport:
    name: str
    params: dict
    truncation: dict
    passed: bool
    witness: dict | None = None
    checked: int = 0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": self.params,
            "truncation": self.truncation,
            "status": self.status,
            "checked": self.checked,
            "witness": self.witness,
        }

    def line(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        trunc = ", ".join(f"{k}={v}" for k, v in self.truncation.items())
        out = f"{self.status.upper():4}  {self.name}({params}) [{trunc}]"
        if self.witness:
            out += f"  witness: {self.witness}"
        return out


def compare(lhs: BivariateSeries | PowerSeries, rhs: BivariateSeries | PowerSeries):
    """First mismatch as a witness dict, or None when the shared range agrees."""
    if isinstance(lhs, PowerSeries):
        n = min(lhs.q_max, rhs.q_max)
        for b in range(n + 1):
            if lhs.coeffs[b] != rhs.coeffs[b]:
                return {"q": b, "lhs": str(lhs.coeffs[b]), "rhs": str(rhs.coeffs[b])}
        return None
    diff = first_difference(lhs, rhs)
    if diff is None:
        return None
    a, b, x, y = diff
    return {"z": a, "q": b, "lhs": str(x), "rhs": str(y)}


class Checker:
    """Accumulates labelled comparisons; stops recording at the first failure."""

    def __init__(self, name: str, params: dict, truncation: dict):
        self.name, self.params, self.truncation = name, params, truncation
        self.checked = 0
        self.witness: dict | None = None

    def equal(self, label: str, lhs, rhs) -> bool:
        if self.witness is not None:
            return False
        self.checked += 1
        w = compare(lhs, rhs)
        if w is not None:
            self.witness = {"check": label, **w}
            return False
        return True

    def scalar(self, label: str, lhs: int, rhs: int, **where) -> bool:
        if self.witness is not None:
            return False
        self.checked += 1
        if lhs != rhs:
            self.witness = {"check": label, **where, "lhs": str(lhs), "rhs": str(rhs)}
            return False
        return True

    def report(self) -> IdentityReport:
        return IdentityReport(self.name, self.params, self.truncation,
                              self.witness is None, self.witness, self.checked)


def merge(name: str, params: dict, truncation: dict,
          reports: Iterable[IdentityReport]) -> IdentityReport:
    checked = 0
    for r in reports:
        checked += r.checked
        if not r.passed:
            return IdentityReport(name, params, truncation, False,
                                  {"sub": r.name, "params": r.params, **(r.witness or {})},
                                  checked)
    return IdentityReport(name, params, truncation, True, None, checked)
