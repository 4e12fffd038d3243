"""Deterministic tensor Gauss-Hermite quadrature and a seeded Monte Carlo
fallback for Gaussian expectations.

A rule integrates against the normalized Gaussian probability density
with a given SPD precision matrix P (density proportional to
exp(-x.Px/2)).  Nodes are the tensor grid x = sqrt(2) P^{-1/2} u over
1-D Gauss-Hermite nodes u, enumerated in lexicographic order, and the
weighted sum is accumulated with compensated summation so results are
bit-stable run to run on one platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.hermite import hermgauss

from .errors import ConfigError, EvaluatorError, NodeBudgetError
from .operators import inv_sqrt_spd

__all__ = ["QuadratureRule", "integrate", "integrate_shifted", "mc_integrate"]

NODE_BUDGET = 10_000_000


@lru_cache(maxsize=64)
def _hermite_rule(k: int) -> tuple[np.ndarray, np.ndarray]:
    u, w = hermgauss(k)
    u.flags.writeable = False
    w.flags.writeable = False
    return u, w


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor Gauss-Hermite rule for one Gaussian weight.

    ``scaling`` is the precision matrix of the Gaussian probability
    measure being integrated against.
    """

    dim: int
    nodes_per_axis: int = 40
    scaling: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.dim < 1 or self.nodes_per_axis < 1:
            raise ConfigError("quadrature dimensions and node counts must be positive")
        total = self.nodes_per_axis**self.dim
        if total > NODE_BUDGET:
            raise NodeBudgetError(
                f"{self.nodes_per_axis}^{self.dim} = {total} nodes exceeds the "
                f"budget of {NODE_BUDGET}"
            )
        scaling = np.eye(self.dim) if self.scaling is None else np.asarray(self.scaling, float)
        if scaling.shape != (self.dim, self.dim):
            raise ConfigError(
                f"scaling must be {self.dim}x{self.dim}, got {scaling.shape}"
            )
        scaling = np.array(scaling)
        scaling.flags.writeable = False
        object.__setattr__(self, "scaling", scaling)
        # validates SPD as a side effect
        object.__setattr__(self, "_transform", math.sqrt(2.0) * inv_sqrt_spd(scaling))

    def nodes_1d(self) -> tuple[np.ndarray, np.ndarray]:
        return _hermite_rule(self.nodes_per_axis)

    def grid(self, center: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
        """All nodes (lexicographic) and their probability weights."""
        u, w = self.nodes_1d()
        mesh = np.meshgrid(*([u] * self.dim), indexing="ij")
        U = np.stack([m.ravel() for m in mesh], axis=1)
        wmesh = np.meshgrid(*([w] * self.dim), indexing="ij")
        W = np.ones(U.shape[0])
        for m in wmesh:
            W = W * m.ravel()
        W = W / math.pi ** (self.dim / 2.0)
        X = U @ self._transform.T
        if center is not None:
            X = X + np.asarray(center, dtype=float)[None, :]
        return X, W


def _reduce(values: np.ndarray, weights: np.ndarray) -> complex:
    prods = values * weights
    if np.any(np.isnan(prods)):
        bad = int(np.nonzero(np.isnan(prods))[0][0])
        raise EvaluatorError(f"integrand produced NaN at node {bad}")
    return complex(math.fsum(prods.real), math.fsum(prods.imag))


def integrate(rule: QuadratureRule, f) -> complex:
    """Expectation of ``f`` under the rule's Gaussian probability measure.

    ``f`` maps an (m, dim) array of points to m values.
    """
    X, W = rule.grid()
    return _reduce(np.asarray(f(X), dtype=complex), W)


def integrate_shifted(rule: QuadratureRule, center, f) -> complex:
    """Same expectation with the Gaussian recentered at ``center``."""
    X, W = rule.grid(center=np.asarray(center, dtype=float))
    return _reduce(np.asarray(f(X), dtype=complex), W)


def mc_integrate(seed: int, samples: int, scaling, f) -> tuple[complex, float]:
    """Monte Carlo Gaussian expectation with a counter-based generator.

    Returns the estimate and its standard error.  The same seed always
    reproduces the same sample stream.
    """
    if samples < 1000:
        raise ConfigError("mc_integrate needs at least 1000 samples")
    scaling = np.asarray(scaling, dtype=float)
    dim = scaling.shape[0]
    rng = np.random.Generator(np.random.Philox(seed))
    xi = rng.standard_normal((samples, dim))
    X = xi @ inv_sqrt_spd(scaling).T
    values = np.asarray(f(X), dtype=complex)
    if np.any(np.isnan(values)):
        raise EvaluatorError("integrand produced NaN in a Monte Carlo sample")
    estimate = complex(
        math.fsum(values.real) / samples, math.fsum(values.imag) / samples
    )
    spread = float(np.sqrt(np.mean(np.abs(values - estimate) ** 2)))
    return estimate, spread / math.sqrt(samples)
