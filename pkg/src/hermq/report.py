"""Verification report rows shared by the checks and the command line."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from numbers import Rational as _RationalABC

STATUSES = ("pass", "fail", "paper_discrepancy")


def render_residual(value) -> str:
    """Exact values as ``num/den`` (or a Poly2's text); floats in repr form."""
    from .polyring import Poly2, format_rational

    if isinstance(value, Poly2):
        return "0" if value.is_zero() else str(value)
    if isinstance(value, _RationalABC):
        return format_rational(value)
    if isinstance(value, complex):
        return repr(abs(value))
    return repr(value)


@dataclass
class VerifyReport:
    identity_id: str
    params: tuple = ()
    status: str = "pass"
    residual: str = "0"
    runtime_ms: int = 0
    detail: str = field(default="", compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        self.params = tuple((str(k), str(v)) for k, v in dict(self.params).items())

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "identity_id": self.identity_id,
            "params": dict(self.params),
            "status": self.status,
            "residual": self.residual,
        }
        if timing:
            out["runtime_ms"] = self.runtime_ms
        if self.detail:
            out["detail"] = self.detail
        return out


@contextmanager
def stopwatch():
    """Yields a one-element list that holds elapsed milliseconds on exit."""
    box = [0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = int(round((time.perf_counter() - start) * 1000))


def exact_report(identity_id: str, params: dict, residual, discrepancy: bool = False,
                 runtime_ms: int = 0, detail: str = "") -> VerifyReport:
    """pass iff the residual is exactly zero; a nonzero residual on a known
    misprint is ``paper_discrepancy`` instead of ``fail``."""
    zero = not residual
    status = "pass" if zero else ("paper_discrepancy" if discrepancy else "fail")
    return VerifyReport(identity_id, tuple(params.items()), status, render_residual(residual), runtime_ms, detail)


def numeric_report(identity_id: str, params: dict, lhs, rhs, tol: float,
                   runtime_ms: int = 0, detail: str = "") -> VerifyReport:
    """pass iff |lhs - rhs| <= tol * max(1, |rhs|)."""
    err = abs(lhs - rhs)
    status = "pass" if err <= tol * max(1.0, abs(rhs)) else "fail"
    return VerifyReport(identity_id, tuple(params.items()), status, repr(float(err)), runtime_ms, detail)
