"""Seeded generators for well-conditioned random inputs.

Used by the verification suite and the test suite; eigenvalues are kept
inside [0.2, 5] so that identities involving inverses and fourth roots
hold at the advertised tolerances.
"""

from __future__ import annotations

import numpy as np

from .operators import RealLinearMap, SpaceContext

__all__ = [
    "random_spd_matrix",
    "random_spd_map",
    "random_real_preserving_map",
    "rotated_weight",
]


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    return q * np.sign(np.diag(r))


def random_spd_matrix(rng: np.random.Generator, d: int,
                      eig_low: float = 0.2, eig_high: float = 5.0) -> np.ndarray:
    q = random_orthogonal(rng, d)
    vals = rng.uniform(eig_low, eig_high, size=d)
    return (q * vals) @ q.T


def random_spd_map(rng: np.random.Generator, n: int) -> RealLinearMap:
    """Random SPD weight on C^n (generally not real-preserving)."""
    return RealLinearMap(SpaceContext(n), random_spd_matrix(rng, 2 * n))


def random_real_preserving_map(
    rng: np.random.Generator, n: int,
    eig_low: float = 0.2, eig_high: float = 5.0,
) -> RealLinearMap:
    """Random block-diagonal SPD weight d(R, T).

    Quadrature-backed checks should pass a narrower eigenvalue band: the
    Gauss-Hermite convergence ratio for kernel-section integrands scales
    like one minus the T-to-H eigenvalue ratio, so extreme block
    imbalance needs far more nodes than the fixed budgets provide.
    """
    return RealLinearMap.from_blocks(
        random_spd_matrix(rng, n, eig_low, eig_high),
        random_spd_matrix(rng, n, eig_low, eig_high),
    )


def rotated_weight(A: RealLinearMap, theta: float, axis: int = 0) -> RealLinearMap:
    """Conjugate a weight by a rotation in one (x_j, y_j) plane.

    Mixes the real and imaginary directions, producing weights that are
    SPD but do not preserve the real subspace.
    """
    n = A.space.n
    d = 2 * n
    G = np.eye(d)
    i, j = axis, n + axis
    c, s = np.cos(theta), np.sin(theta)
    G[i, i] = c
    G[i, j] = -s
    G[j, i] = s
    G[j, j] = c
    return RealLinearMap(A.space, G.T @ A.entries @ G)
