"""Translation representation, restriction machinery and the
Segal-Bargmann transforms attached to a weight operator.

All integral operators here have two evaluation routes that serve as
each other's oracle:

* a closed form obtained by completing the square inside the symbolic
  polynomial-times-Gaussian class (:class:`~fockops.symbolic.GaussPoly`),
* tensor Gauss-Hermite quadrature for black-box integrands
  (:class:`~fockops.symbolic.CallableField`).

Conventions: ``x`` and ``y`` denote points of the real subspace (real
n-vectors), ``z`` and ``w`` points of the complexification.  Operators
that integrate over the real subspace require a weight that preserves
it; the phase operator and the multiplier do not.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.hermite import herm2poly

from .operators import OperatorContext
from .quadrature import QuadratureRule, integrate_shifted
from .symbolic import (
    ExpQuadratic,
    GaussPoly,
    HolomorphicFunction,
    Polynomial,
    checked_exp,
    convolve_gaussian,
    l2_inner_product,
)

__all__ = [
    "multiplier",
    "translate",
    "restrict",
    "restrict_adjoint",
    "heat_density",
    "heat_kernel",
    "heat_convolve",
    "semigroup_residual",
    "phase_factor",
    "phase_operator",
    "restriction_gram",
    "restriction_modulus",
    "restriction_modulus_at",
    "segal_bargmann_classical",
    "segal_bargmann_classical_fn",
    "segal_bargmann",
    "segal_bargmann_fn",
    "segal_bargmann_gaussian",
    "segal_bargmann_gaussian_fn",
    "density_t",
    "density_s",
    "coherent_state",
    "coherent_state_fn",
    "coherent_inner",
    "kernel_from_densities",
    "hermite_function",
    "sb_eigenfunction",
    "ground_state",
    "weighted_ground_state",
]


# -- translation representation ---------------------------------------------


def multiplier_exponential(ctx: OperatorContext, x) -> ExpQuadratic:
    """The multiplier m(x, .) as a symbolic exponential-linear function of z."""
    x = np.asarray(x, dtype=float)
    Hc, C = ctx.H_matrix, ctx.K_matrix
    b = Hc.T @ x + C @ x
    weight_quad = complex(np.dot((Hc + C) @ x, x))
    return ExpQuadratic(np.zeros((ctx.n, ctx.n)), b, -0.5 * weight_quad)


def multiplier(ctx: OperatorContext, x, z) -> complex:
    """Cocycle m(x, z) making translation a representation on the space.

    m(x, z) = exp(<Hz, x> + <K conj(z), x> - <Ax, x>/2).  The cocycle law
    m(x, z) m(y, z - x) = m(x + y, z) needs <Ax, y> symmetric in real
    x, y, which holds exactly when the complex-linear part of the weight
    preserves the real subspace (any block-diagonal weight, or one whose
    complex-linear part is real; not every SPD weight in these
    coordinates).
    """
    return multiplier_exponential(ctx, x).evaluate(np.asarray(z, dtype=complex))


def translate(ctx: OperatorContext, x, F: HolomorphicFunction) -> HolomorphicFunction:
    """The (projective) translation T_x F = m(x, .) F(. - x)."""
    x = np.asarray(x, dtype=float)
    return F.shifted(-x.astype(complex)).times_exp(multiplier_exponential(ctx, x))


# -- restriction to the real subspace and its adjoint ------------------------


def restrict(ctx: OperatorContext, F: HolomorphicFunction) -> GaussPoly:
    """Weighted restriction R F(x) = c exp(-<Ax, x>/2) F(x).

    Needs the weight to preserve the real subspace (the damping
    exp(-x.Rx/2) is what makes the restriction land in L^2).
    """
    ctx.require_real_form()
    poly, gauss = F.single_term()
    return GaussPoly(
        poly * ctx.c_restriction,
        ctx.R - gauss.Q,
        gauss.b,
        gauss.gamma,
    )


def _convolve_at(prefactor: complex, G: np.ndarray, h, z: np.ndarray,
                 rule: QuadratureRule | None) -> complex:
    """Quadrature value of prefactor * (exp(-u.Gu/2) * h)(z) at complex z.

    The Gaussian kernel recentred at Re(z) becomes the quadrature weight;
    the leftover imaginary shift is a bounded oscillatory factor.
    """
    G = np.asarray(G, dtype=float)
    n = G.shape[0]
    a, imag = z.real, z.imag
    if rule is None:
        rule = QuadratureRule(dim=n, nodes_per_axis=40, scaling=G)
    log_det = float(np.sum(np.log(np.linalg.eigvalsh(G))))
    const = (
        prefactor
        * (2.0 * math.pi) ** (n / 2.0)
        * math.exp(-0.5 * log_det)
        * complex(np.exp(0.5 * np.dot(imag, G @ imag)))
    )
    Gb = G @ imag

    def integrand(X):
        osc = np.exp(-1j * ((a[None, :] - X) @ Gb))
        return h.evaluate_many(X) * osc

    return const * integrate_shifted(rule, a, integrand)


def restrict_adjoint(ctx: OperatorContext, h, z, rule: QuadratureRule | None = None) -> complex:
    """Adjoint of the weighted restriction, evaluated at a complex point.

    For a GaussPoly the Gaussian convolution is done in closed form; a
    CallableField goes through quadrature.
    """
    ctx.require_real_form()
    z = np.asarray(z, dtype=complex)
    Hn = 0.5 * (ctx.R + ctx.T)
    front = (
        ctx.c_a**-2
        * ctx.c_restriction
        * complex(checked_exp(0.5 * np.dot(z, ctx.R @ z)))
    )
    if isinstance(h, GaussPoly):
        conv = convolve_gaussian(1.0, Hn, h)
        return front * conv.evaluate(z)
    return front * _convolve_at(1.0, Hn, h, z, rule)


def restriction_gram(ctx: OperatorContext, h, x, rule: QuadratureRule | None = None) -> complex:
    """The Gram operator R R* of the restriction map, at a real point."""
    ctx.require_real_form()
    x = np.asarray(x, dtype=float)
    damp = ctx.c_restriction * math.exp(-0.5 * float(np.dot(x, ctx.R @ x)))
    return damp * restrict_adjoint(ctx, h, x.astype(complex), rule)


def restriction_modulus(ctx: OperatorContext, h: GaussPoly) -> GaussPoly:
    """|R*| h in closed form: heat convolution at half time."""
    ctx.require_real_form()
    return heat_convolve(0.5 * (ctx.R + ctx.T), 0.5, h)


def restriction_modulus_at(ctx: OperatorContext, h, x, rule: QuadratureRule | None = None) -> complex:
    ctx.require_real_form()
    x = np.asarray(x, dtype=float)
    if isinstance(h, GaussPoly):
        return restriction_modulus(ctx, h).evaluate(x)
    Hn = 0.5 * (ctx.R + ctx.T)
    pref = _heat_coeff(2.0 * Hn)
    return _convolve_at(pref, 2.0 * Hn, h, x.astype(complex), rule)


# -- heat kernels -------------------------------------------------------------


def _heat_coeff(P: np.ndarray) -> float:
    log_det = float(np.sum(np.log(np.linalg.eigvalsh(P))))
    return math.exp(0.5 * log_det) * (2.0 * math.pi) ** (-P.shape[0] / 2.0)


def heat_kernel(P, t: float = 1.0) -> GaussPoly:
    """Normalized Gaussian with precision P/t (so t acts as time)."""
    P = np.asarray(P, dtype=float)
    Pt = P / t
    return GaussPoly.gaussian(Pt, coeff=_heat_coeff(Pt))


def heat_density(P, t: float, x) -> float:
    """Pointwise value of the heat family member at time t."""
    return float(heat_kernel(P, t).evaluate(np.asarray(x, dtype=float)).real)


def heat_convolve(P, t: float, h: GaussPoly) -> GaussPoly:
    """Closed-form convolution of the time-t kernel with a GaussPoly."""
    P = np.asarray(P, dtype=float)
    Pt = P / t
    return convolve_gaussian(_heat_coeff(Pt), Pt, h)


def semigroup_residual(P, t: float, s: float, points) -> float:
    """Max deviation of (kernel_t * kernel_s) from kernel_{t+s} on points."""
    P = np.asarray(P, dtype=float)
    composed = heat_convolve(P, t, heat_kernel(P, s))
    worst = 0.0
    for x in points:
        x = np.asarray(x, dtype=float)
        target = heat_density(P, t + s, x)
        err = abs(composed.evaluate(x) - target) / max(1.0, abs(target))
        worst = max(worst, err)
    return worst


# -- phase operator ------------------------------------------------------------


def phase_factor(ctx: OperatorContext, x) -> complex:
    """exp(i Im <x, Kx>); identically 1 when the weight preserves the
    real subspace."""
    x = np.asarray(x, dtype=float)
    inner = complex(np.dot(x, np.conj(ctx.K_matrix @ x)))
    return complex(np.exp(1j * inner.imag))


def phase_factor_from_weight(ctx: OperatorContext, x) -> complex:
    """Same phase computed from the full weight, exp(i Im <x, Ax>)."""
    x = np.asarray(x, dtype=float)
    ax = ctx.A(x.astype(complex))
    inner = complex(np.dot(x, np.conj(ax)))
    return complex(np.exp(1j * inner.imag))


def phase_operator(ctx: OperatorContext, h, x) -> complex:
    """Multiplication by the unimodular phase; preserves |h(x)| exactly."""
    x = np.asarray(x, dtype=float)
    return phase_factor(ctx, x) * h.evaluate(x)


# -- Segal-Bargmann transforms -------------------------------------------------


def segal_bargmann_classical_fn(g: GaussPoly) -> HolomorphicFunction:
    """Classical transform of a GaussPoly, as a symbolic holomorphic function."""
    n = g.n
    conv = convolve_gaussian(1.0, 2.0 * np.eye(n), g)
    envelope = ExpQuadratic(np.eye(n), np.zeros(n), 0.0)
    return conv.as_holomorphic().times_exp(envelope).times_scalar((2.0 / math.pi) ** (n / 4.0))


def segal_bargmann_classical(g, z, rule: QuadratureRule | None = None) -> complex:
    """Classical Segal-Bargmann transform evaluated at a complex point."""
    z = np.asarray(z, dtype=complex)
    if isinstance(g, GaussPoly):
        return segal_bargmann_classical_fn(g).evaluate(z)
    n = z.shape[0]
    front = (2.0 / math.pi) ** (n / 4.0) * complex(checked_exp(0.5 * np.dot(z, z)))
    return front * _convolve_at(1.0, 2.0 * np.eye(n), g, z, rule)


def _sb_prefactor(ctx: OperatorContext) -> float:
    return (2.0 / math.pi) ** (ctx.n / 4.0) * math.exp(
        0.75 * ctx.log_det_h - 0.25 * ctx.log_det_v_a
    )


def segal_bargmann_fn(ctx: OperatorContext, f: GaussPoly) -> HolomorphicFunction:
    """Weighted Segal-Bargmann transform of a GaussPoly, symbolically.

    The integral kernel is exp(-(z-y).H(z-y)), Gaussian because the
    complex-linear part is positive; the result is the convolution times
    the entire envelope exp(z.Rz/2).
    """
    ctx.require_real_form()
    Hn = 0.5 * (ctx.R + ctx.T)
    conv = convolve_gaussian(1.0, 2.0 * Hn, f)
    envelope = ExpQuadratic(ctx.R.astype(complex), np.zeros(ctx.n), 0.0)
    return conv.as_holomorphic().times_exp(envelope).times_scalar(_sb_prefactor(ctx))


def segal_bargmann(ctx: OperatorContext, f, z, rule: QuadratureRule | None = None) -> complex:
    """Weighted Segal-Bargmann transform at a complex point."""
    ctx.require_real_form()
    z = np.asarray(z, dtype=complex)
    if isinstance(f, GaussPoly):
        return segal_bargmann_fn(ctx, f).evaluate(z)
    Hn = 0.5 * (ctx.R + ctx.T)
    front = _sb_prefactor(ctx) * complex(checked_exp(0.5 * np.dot(z, ctx.R @ z)))
    return front * _convolve_at(1.0, 2.0 * Hn, f, z, rule)


def density_t(ctx: OperatorContext) -> GaussPoly:
    """The Gaussian probability density with precision given by the block
    acting on the imaginary directions (holomorphically extendable)."""
    ctx.require_real_form()
    return GaussPoly.gaussian(ctx.T, coeff=_heat_coeff(ctx.T))


def density_s(ctx: OperatorContext) -> GaussPoly:
    """The Gaussian probability density for the harmonic-mean block."""
    ctx.require_real_form()
    return GaussPoly.gaussian(ctx.S, coeff=_heat_coeff(ctx.S))


def segal_bargmann_gaussian_fn(ctx: OperatorContext, f: GaussPoly) -> HolomorphicFunction:
    """Gaussian-measure form of the transform: convolution with the
    T-block density."""
    ctx.require_real_form()
    conv = convolve_gaussian(_heat_coeff(ctx.T), ctx.T, f)
    return conv.as_holomorphic()


def segal_bargmann_gaussian(ctx: OperatorContext, f, z, rule: QuadratureRule | None = None) -> complex:
    ctx.require_real_form()
    z = np.asarray(z, dtype=complex)
    if isinstance(f, GaussPoly):
        return segal_bargmann_gaussian_fn(ctx, f).evaluate(z)
    return _convolve_at(_heat_coeff(ctx.T), ctx.T, f, z, rule)


# -- coherent states -----------------------------------------------------------


def coherent_state_fn(ctx: OperatorContext, z) -> GaussPoly:
    """The state x -> ratio of the shifted T-density to the S-density.

    Its Gaussian exponent has precision T - S, which may be indefinite;
    membership in the S-weighted L^2 space is what the positivity of
    2T - S guarantees.
    """
    ctx.require_real_form()
    z = np.asarray(z, dtype=complex)
    T, S = ctx.T, ctx.S
    coeff = _heat_coeff(T) / _heat_coeff(S)
    return GaussPoly(
        Polynomial.constant(ctx.n, coeff),
        (T - S).astype(complex),
        T @ z,
        -0.5 * np.dot(z, T @ z),
    )


def coherent_state(ctx: OperatorContext, x, z) -> complex:
    """Pointwise coherent-state value; real when both arguments are real."""
    return coherent_state_fn(ctx, z).evaluate(np.asarray(x, dtype=complex))


def coherent_inner(ctx: OperatorContext, w, z) -> complex:
    """S-weighted inner product of two coherent states, in closed form."""
    return l2_inner_product(
        coherent_state_fn(ctx, w), coherent_state_fn(ctx, z), weight=density_s(ctx)
    )


def kernel_from_densities(ctx: OperatorContext, z, w, rule: QuadratureRule | None = None) -> complex:
    """Reproducing kernel as a Gaussian-density integral, by quadrature.

    The integrand (two shifted T-densities over the S-density) decays
    with precision 2T - S, so the rule is scaled to that block and
    recentered at the real part of the integrand's stationary point;
    what remains under the quadrature weight is bounded and analytic.
    """
    ctx.require_real_form()
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    decay = 2.0 * ctx.T - ctx.S
    if rule is None:
        rule = QuadratureRule(dim=ctx.n, nodes_per_axis=40, scaling=decay)
    total = (
        coherent_state_fn(ctx, z)
        * coherent_state_fn(ctx, np.conj(w))
        * density_s(ctx)
    )
    center = np.linalg.solve(decay, (ctx.T @ (z + np.conj(w))).real)
    # divide out the rule's normalized weight so the node sum is the integral
    log_det = float(np.sum(np.log(np.linalg.eigvalsh(decay))))
    const = (2.0 * math.pi) ** (ctx.n / 2.0) * math.exp(-0.5 * log_det)
    counter_weight = GaussPoly.gaussian(-decay, -(decay @ center),
                                        0.5 * float(center @ decay @ center))
    flat = total * counter_weight

    def integrand(X):
        return flat.evaluate_many(X)

    return const * integrate_shifted(rule, center, integrand)


# -- reference real-domain functions -------------------------------------------


def _hermite_poly_1d(n_vars: int, axis: int, degree: int, stretch: float = 1.0) -> Polynomial:
    coeffs = herm2poly([0.0] * degree + [1.0]) if degree else np.ones(1)
    terms = {}
    for p, c in enumerate(np.atleast_1d(coeffs)):
        if c == 0:
            continue
        alpha = [0] * n_vars
        alpha[axis] = p
        terms[tuple(alpha)] = c * stretch**p
    return Polynomial(n_vars, terms)


def hermite_function(alpha) -> GaussPoly:
    """Product Hermite function: H_alpha(x) times exp(-|x|^2 / 2)."""
    alpha = tuple(int(a) for a in alpha)
    n = len(alpha)
    poly = Polynomial.constant(n, 1.0)
    for j, a in enumerate(alpha):
        poly = poly * _hermite_poly_1d(n, j, a)
    return GaussPoly(poly, np.eye(n), np.zeros(n), 0.0)


def sb_eigenfunction(alpha) -> GaussPoly:
    """Orthonormal L^2 family mapped onto the normalized monomials by the
    classical transform: scaled Hermite polynomials under exp(-|x|^2)."""
    alpha = tuple(int(a) for a in alpha)
    n = len(alpha)
    poly = Polynomial.constant(n, (2.0 / math.pi) ** (n / 4.0))
    for j, a in enumerate(alpha):
        poly = poly * _hermite_poly_1d(n, j, a, stretch=math.sqrt(2.0))
        poly = poly * (1.0 / math.sqrt(2.0**a * math.factorial(a)))
    return GaussPoly(poly, 2.0 * np.eye(n), np.zeros(n), 0.0)


def ground_state(n: int) -> GaussPoly:
    return sb_eigenfunction((0,) * n)


def weighted_ground_state(ctx: OperatorContext) -> GaussPoly:
    """Unit-norm Gaussian matched to the complex-linear part of the weight."""
    ctx.require_real_form()
    Hn = 0.5 * (ctx.R + ctx.T)
    coeff = (2.0 / math.pi) ** (ctx.n / 4.0) * math.exp(0.25 * ctx.log_det_h)
    return GaussPoly.gaussian(2.0 * Hn, coeff=coeff)
