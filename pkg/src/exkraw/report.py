"""Verification reports: one case per identity instance, JSON-serializable."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import Polynomial, QuasiPolynomial, RationalFunction, format_rational


def encode(value: Any) -> Any:
    """Exact JSON encoding: rationals as "num/den", polynomials as coefficient lists."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, Polynomial):
        return value.to_json()
    if isinstance(value, QuasiPolynomial):
        return {"base": format_rational(value.base), "poly": value.poly.to_json()}
    if isinstance(value, RationalFunction):
        return {"num": value.num.to_json(), "den": value.den.to_json()}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


def _is_scalar(v: Any) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


@dataclass
class Case:
    id: str
    params: dict
    passed: bool
    lhs: Any = None
    rhs: Any = None
    note: str | None = None

    def sort_key(self):
        return (self.id, json.dumps(encode(self.params), sort_keys=True))

    def to_dict(self) -> dict:
        out = {"id": self.id, "params": encode(self.params), "pass": self.passed}
        # scalar sides are always reported; polynomial sides only on failure
        if not self.passed or (_is_scalar(self.lhs) and _is_scalar(self.rhs)):
            if self.lhs is not None:
                out["lhs"] = encode(self.lhs)
            if self.rhs is not None:
                out["rhs"] = encode(self.rhs)
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Report:
    suite: str
    cases: list[Case] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    def add(self, id: str, params: dict, lhs: Any, rhs: Any, note: str | None = None) -> bool:
        ok = lhs == rhs
        self.cases.append(Case(id, dict(params), bool(ok), lhs, rhs, note))
        return bool(ok)

    def check(self, id: str, params: dict, ok: bool, lhs: Any = None, rhs: Any = None, note: str | None = None) -> bool:
        self.cases.append(Case(id, dict(params), bool(ok), lhs, rhs, note))
        return bool(ok)

    def skip(self, id: str, params: dict, reason: str) -> None:
        """Record a parameter point that is degenerate rather than failing."""
        self.skipped.append({"id": id, "params": dict(params), "reason": reason})

    def extend(self, other: "Report") -> "Report":
        self.cases.extend(other.cases)
        self.skipped.extend(other.skipped)
        return self

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def failed(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        cases = sorted(self.cases, key=Case.sort_key)
        out = {
            "suite": self.suite,
            "cases": [c.to_dict() for c in cases],
            "summary": {"total": self.total, "failed": len(self.failed)},
        }
        if self.skipped:
            key = lambda s: (s["id"], json.dumps(encode(s["params"]), sort_keys=True))
            out["skipped"] = [encode(s) for s in sorted(self.skipped, key=key)]
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def __bool__(self):
        return self.ok
