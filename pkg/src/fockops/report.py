"""Structured check results shared by the identity suites, the
verification command and the tests."""

from __future__ import annotations

from dataclasses import dataclass


def complex_json(value):
    """Numbers serialize as-is; complex values as {"re": .., "im": ..}."""
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if value is None:
        return None
    return float(value)


@dataclass(frozen=True)
class CheckResult:
    name: str
    lhs: complex | float | None
    rhs: complex | float | None
    residual: float
    tolerance: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "lhs": complex_json(self.lhs),
            "rhs": complex_json(self.rhs),
            "residual": float(self.residual),
            "tolerance": float(self.tolerance),
            "pass": bool(self.passed),
        }


def make_check(
    name: str,
    lhs,
    rhs,
    tolerance: float,
    scale: float | None = None,
) -> CheckResult:
    """Relative-residual comparison of two scalars."""
    lhs_c = complex(lhs)
    rhs_c = complex(rhs)
    if scale is None:
        scale = max(abs(lhs_c), abs(rhs_c), 1e-300)
    residual = abs(lhs_c - rhs_c) / scale
    if lhs_c.imag == 0 and rhs_c.imag == 0:
        lhs_out, rhs_out = lhs_c.real, rhs_c.real
    else:
        lhs_out, rhs_out = lhs_c, rhs_c
    return CheckResult(name, lhs_out, rhs_out, residual, tolerance, residual <= tolerance)


def make_bound_check(name: str, value: float, bound: float, tolerance: float) -> CheckResult:
    """Check value <= bound + tolerance, reporting the overshoot."""
    overshoot = max(0.0, value - bound)
    return CheckResult(name, value, bound, overshoot, tolerance, overshoot <= tolerance)
