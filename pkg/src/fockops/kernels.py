"""Gaussian measure, reproducing kernel, and normalization identities of
the weighted Fock space.

For a validated weight A = H + K the space consists of holomorphic
functions square-integrable against

    density(z) = pi^{-n} sqrt(det_V A) exp(-(Az, z)),

normalized so the constant function 1 has unit norm.  The reproducing
kernel is

    kernel(z, w) = c_a^{-2} exp( conj(<Kz,z>)/2 + <Hz,w> + <Kw,w>/2 ),

and the map ``classical_to_weighted`` is the unitary that carries the
classical Fock space (A = identity) onto the weighted one by a linear
change of variable z -> H^{-1/2} z and a Gaussian reweighting.  Both the
kernel and the unitary stay inside the symbolic closed class, so all
identities here can be checked coefficient by coefficient as well as by
quadrature.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, RangeOverflowError
from .operators import OperatorContext, RealLinearMap, build_context, real_inner
from .quadrature import QuadratureRule, integrate
from .report import CheckResult, make_bound_check, make_check
from .symbolic import EXP_OVERFLOW, ExpQuadratic, HolomorphicFunction

__all__ = [
    "measure_density",
    "kernel",
    "kernel_section",
    "eval_functional_norm",
    "classical_to_weighted",
    "weighted_to_classical",
    "fock_rule",
    "fock_inner_product",
    "fock_norm",
    "normalized_monomial",
    "det_identity_suite",
]

DEFAULT_NODES_BY_DIM = {2: 40, 4: 20, 6: 10}


def measure_density(ctx: OperatorContext, z) -> float:
    """Density of the Gaussian measure at z (with respect to dx dy)."""
    z = np.asarray(z, dtype=complex)
    quad = real_inner(ctx.A(z), z)
    return float(
        math.pi ** (-ctx.n) * math.exp(0.5 * ctx.log_det_v_a - quad)
    )


def _kernel_exponent(ctx: OperatorContext, z: np.ndarray, w: np.ndarray) -> complex:
    C = ctx.K_matrix
    Hc = ctx.H_matrix
    wbar = np.conj(w)
    return complex(
        0.5 * np.dot(z, np.conj(C) @ z)
        + np.dot(Hc @ z, wbar)
        + 0.5 * np.dot(wbar, C @ wbar)
    )


def kernel(ctx: OperatorContext, z, w) -> complex:
    """Reproducing kernel at (z, w); holomorphic in z, antiholomorphic in w."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    expo = _kernel_exponent(ctx, z, w) - 2.0 * math.log(ctx.c_a)
    if expo.real > EXP_OVERFLOW:
        raise RangeOverflowError(
            f"kernel exponent {expo.real:.1f} out of range", exponent=expo.real
        )
    return complex(np.exp(expo))


def kernel_section(ctx: OperatorContext, w) -> HolomorphicFunction:
    """The kernel at fixed second argument, as a symbolic function of z."""
    w = np.asarray(w, dtype=complex)
    wbar = np.conj(w)
    C = ctx.K_matrix
    gauss = ExpQuadratic(
        np.conj(C), ctx.H_matrix.T @ wbar, 0.5 * np.dot(wbar, C @ wbar)
    )
    return HolomorphicFunction.from_exp_quadratic(gauss).times_scalar(ctx.c_a**-2)


def eval_functional_norm(ctx: OperatorContext, z) -> float:
    """Operator norm of F -> F(z), the square root of the kernel diagonal."""
    value = kernel(ctx, z, z)
    return math.sqrt(value.real)


def weighted_to_classical(ctx: OperatorContext, F: HolomorphicFunction) -> HolomorphicFunction:
    """Unitary from the weighted space onto the classical Fock space:

        (c_a) exp(-conj(<K H^{-1/2}w, H^{-1/2}w>)/2) F(H^{-1/2} w).

    The substitution w -> sqrt(H) v turns the classical Gaussian into the
    weighted one, which is what makes this direction the isometry."""
    T1 = ctx.inv_sqrt_H_matrix
    twist = ExpQuadratic(-(T1.T @ np.conj(ctx.K_matrix) @ T1), np.zeros(ctx.n), 0.0)
    return F.compose_linear(T1).times_exp(twist).times_scalar(ctx.c_a)


def classical_to_weighted(ctx: OperatorContext, F: HolomorphicFunction) -> HolomorphicFunction:
    """Inverse (= adjoint) of :func:`weighted_to_classical`:

        (1/c_a) exp(conj(<Kw, w>)/2) F(sqrt(H) w)."""
    twist = ExpQuadratic(np.conj(ctx.K_matrix), np.zeros(ctx.n), 0.0)
    return F.compose_linear(ctx.sqrt_H_matrix).times_exp(twist).times_scalar(1.0 / ctx.c_a)


def fock_rule(ctx: OperatorContext, nodes_per_axis: int | None = None) -> QuadratureRule:
    """Quadrature rule for the weighted Gaussian measure over all 2n real
    coordinates.  (The measure's density exp(-(Az,z)) has precision 2A in
    the probabilist convention used by :class:`QuadratureRule`.)"""
    dim = 2 * ctx.n
    if nodes_per_axis is None:
        nodes_per_axis = DEFAULT_NODES_BY_DIM.get(dim)
        if nodes_per_axis is None:
            raise DimensionMismatchError(
                f"no default node count for dimension {dim}; pass nodes_per_axis"
            )
    return QuadratureRule(dim=dim, nodes_per_axis=nodes_per_axis, scaling=2.0 * ctx.A.entries)


def _to_points(X: np.ndarray) -> np.ndarray:
    n = X.shape[1] // 2
    return X[:, :n] + 1j * X[:, n:]


def fock_inner_product(
    ctx: OperatorContext,
    F: HolomorphicFunction,
    G: HolomorphicFunction,
    rule: QuadratureRule | None = None,
) -> complex:
    """<F, G> in the weighted space, by tensor quadrature."""
    if rule is None:
        rule = fock_rule(ctx)
    if rule.dim != 2 * ctx.n:
        raise DimensionMismatchError(
            f"rule dimension {rule.dim} does not match 2n = {2 * ctx.n}"
        )

    def integrand(X):
        Z = _to_points(X)
        return F.evaluate_many(Z) * np.conj(G.evaluate_many(Z))

    return integrate(rule, integrand)


def fock_norm(
    ctx: OperatorContext, F: HolomorphicFunction, rule: QuadratureRule | None = None
) -> float:
    value = fock_inner_product(ctx, F, F, rule)
    return math.sqrt(max(value.real, 0.0))


def normalized_monomial(n: int, alpha) -> HolomorphicFunction:
    """z^alpha / sqrt(alpha!), an orthonormal family in the classical space."""
    alpha = tuple(int(a) for a in alpha)
    norm = math.sqrt(math.prod(math.factorial(a) for a in alpha))
    return HolomorphicFunction.monomial(n, alpha, 1.0 / norm)


def det_identity_suite(R: np.ndarray, T: np.ndarray) -> list[CheckResult]:
    """The four determinant identities tying the kernel normalization to
    the block form of the weight.

    (a) c_a^{-2} = det T / (sqrt(det S) det L) with L = (2T - S)^{1/2};
    (b) det R det T / det((R+T)/2)^2 equals
        det(I + (D/sqrt2 - D^{-1}/sqrt2)^2)^{-2} with D = (R^{-1/2} T R^{-1/2})^{1/4};
    (c) sqrt(det R det T) <= det((R+T)/2), an arithmetic-geometric bound;
    (d) c_a^{-2} c^2 = sqrt(det H) / (2 pi)^{n/2} for the restriction weight c.
    """
    R = np.asarray(R, dtype=float)
    T = np.asarray(T, dtype=float)
    n = R.shape[0]
    ctx = build_context(RealLinearMap.from_blocks(R, T))

    det_r = float(np.linalg.det(R))
    det_t = float(np.linalg.det(T))
    det_s = ctx.det_s
    det_l = float(np.linalg.det(ctx.L))
    ca_m2 = ctx.c_a**-2

    checks = [
        make_check(
            "kernel_constant_block_form",
            ca_m2,
            det_t / (math.sqrt(det_s) * det_l),
            1e-12,
        )
    ]

    mean = 0.5 * (R + T)
    lhs_b = det_r * det_t / float(np.linalg.det(mean)) ** 2
    D = ctx.D
    inner = (D - np.linalg.inv(D)) / math.sqrt(2.0)
    rhs_b = float(np.linalg.det(np.eye(n) + inner @ inner)) ** -2
    checks.append(make_check("determinant_identity", lhs_b, rhs_b, 1e-10))

    checks.append(
        make_bound_check(
            "determinant_inequality",
            math.sqrt(det_r * det_t),
            float(np.linalg.det(mean)),
            1e-12 * max(1.0, abs(float(np.linalg.det(mean)))),
        )
    )

    lhs_d = ca_m2 * ctx.c_restriction**2
    rhs_d = math.sqrt(ctx.det_h) / (2.0 * math.pi) ** (n / 2.0)
    checks.append(make_check("constant_consistency", lhs_d, rhs_d, 1e-12))
    return checks
