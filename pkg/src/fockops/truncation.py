"""Finite-dimensional diagnostics for growing towers of diagonal weights.

For commuting blocks with simultaneous eigenvalues (r_k, t_k), the
kernel normalization across the first n coordinates is

    log c_n^{-1} = (1/2) * sum_{k<=n} log[(r_k + t_k) / (2 sqrt(r_k t_k))],

a nondecreasing partial sum with per-term factor >= 1 (equality exactly
at r_k = t_k).  Whether evaluation functionals survive as n grows is
governed by whether this sum stays bounded; the verdict reported here
extrapolates the tail from the observed increments and is a labeled
heuristic, not a proof.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError

__all__ = ["TruncationSpec", "CaSequence", "ca_sequence"]

TAIL_BUDGET = 1e-3
DECAY_MARGIN = 0.05


@dataclass(frozen=True)
class TruncationSpec:
    """Simultaneous eigenvalue data for the two blocks, plus a depth."""

    r_seq: tuple[float, ...]
    t_seq: tuple[float, ...]
    max_n: int

    def __post_init__(self):
        r = tuple(float(v) for v in self.r_seq)
        t = tuple(float(v) for v in self.t_seq)
        if self.max_n < 1:
            raise ConfigError("max_n must be positive")
        if len(r) < self.max_n or len(t) < self.max_n:
            raise ConfigError("eigenvalue sequences shorter than max_n")
        if any(v <= 0 for v in r) or any(v <= 0 for v in t):
            raise ConfigError("eigenvalues must be positive")
        object.__setattr__(self, "r_seq", r)
        object.__setattr__(self, "t_seq", t)

    @classmethod
    def constant(cls, r: float, t: float, max_n: int) -> "TruncationSpec":
        return cls((r,) * max_n, (t,) * max_n, max_n)

    @classmethod
    def perturbation(
        cls, base: float, amplitude: float, power: float, max_n: int
    ) -> "TruncationSpec":
        """r_k = base + amplitude / k^power against t_k = base."""
        r = tuple(base + amplitude / k**power for k in range(1, max_n + 1))
        return cls(r, (base,) * max_n, max_n)


@dataclass(frozen=True)
class CaSequence:
    """Partial normalization constants and the boundedness verdict."""

    log_ca_inv: np.ndarray  # log c_n^{-1}, length max_n
    increments: np.ndarray
    bounded: bool
    tail_bound: float | None
    verdict_note: str

    def ca_inv(self) -> np.ndarray:
        """Linear-domain values; may overflow to inf for divergent data."""
        with np.errstate(over="ignore"):
            return np.exp(self.log_ca_inv)

    def to_json(self) -> dict:
        return {
            "logCaInv": self.log_ca_inv.tolist(),
            "increments": self.increments.tolist(),
            "bounded": self.bounded,
            "tailBound": self.tail_bound,
            "note": self.verdict_note,
        }


def _tail_estimate(increments: np.ndarray) -> tuple[bool, float | None, str]:
    n = increments.shape[0]
    tiny = 1e-15
    if float(increments[-1]) <= tiny and float(np.max(increments[n // 2 :])) <= tiny:
        return True, 0.0, "increments vanish; partial sums are constant"
    window = max(3, min(20, n // 2))
    ks = np.arange(n - window + 1, n + 1, dtype=float)
    ds = np.maximum(increments[-window:], 1e-300)
    slope = float(np.polyfit(np.log(ks), np.log(ds), 1)[0])
    if slope < -1.0 - DECAY_MARGIN:
        tail = float(ds[-1]) * n / (-slope - 1.0)
        note = (
            f"power-law extrapolation (exponent {slope:.2f}) of the local "
            f"quadratic model log-factor ~ eps^2/8; heuristic, not a proof"
        )
        return tail <= TAIL_BUDGET, tail, note
    return False, None, (
        f"increments decay with exponent {slope:.2f} >= -1; partial sums diverge "
        f"under the local quadratic model (heuristic)"
    )


def ca_sequence(spec: TruncationSpec) -> CaSequence:
    """Log-domain partial normalization constants plus a boundedness verdict."""
    r = np.asarray(spec.r_seq[: spec.max_n])
    t = np.asarray(spec.t_seq[: spec.max_n])
    factors = (r + t) / (2.0 * np.sqrt(r * t))
    low = float(np.min(factors))
    if low < 1.0 - 1e-15:
        raise ConfigError(
            f"arithmetic-geometric factor {low} < 1; eigenvalue data is inconsistent"
        )
    increments = 0.5 * np.log(np.maximum(factors, 1.0))
    log_ca_inv = np.cumsum(increments)
    bounded, tail, note = _tail_estimate(increments)
    return CaSequence(log_ca_inv, increments, bounded, tail, note)


def scalar_log_ca_inv(r: float, t: float, n: int) -> float:
    """Closed form for constant eigenvalues: (n/2) log[(r+t)/(2 sqrt(rt))]."""
    return 0.5 * n * math.log((r + t) / (2.0 * math.sqrt(r * t)))
