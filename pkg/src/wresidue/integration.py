"""Exact line and sphere integration, with independent numeric oracles.

The xin integral of a rational function decaying at least like xin^-2 with
poles only at +/-i closes upward: the exact value is 2*pi*i times the residue
at +i, read off the partial-fraction decomposition.  A second exact route
computes the residue by the derivative formula at the pole (independent of
partial fractions), and a third, floating-point route integrates numerically;
both back the exact path in the test suites.

Sphere moments over the unit tangential co-sphere are exact: odd monomials
vanish, even ones follow the double-factorial formula, and the total measure
stays symbolic as Omega3 (moment of 1 is Omega3).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence, Tuple

import numpy as np

from .gaussian import GRat, I
from .scalars import (
    EngineError,
    OMEGA3,
    PI,
    Poly,
    REG,
    ScalarExpr,
    S_ZERO,
    XI,
    XIN,
)
from .clifford import CliffordExpr
from .halfplane import _factor_pole_denominator, partial_fractions

_TANGENTIAL = set(XI[:3])
_PI_VAR = ScalarExpr.var(PI)
_OMEGA3_VAR = ScalarExpr.var(OMEGA3)
_POLE_PLUS = ScalarExpr.const(I)


def _check_decay(coeff: ScalarExpr, required: int = 2):
    dn = coeff.num.degree_in(XIN)
    dd = coeff.den.degree_in(XIN)
    if dd - dn < required:
        raise EngineError(
            f"insufficient decay for line integration: degree gap {dd - dn} < {required}"
        )


_RESIDUE_BASIS: dict = {}


def _residue_basis(den, d: int) -> GRat:
    """Residue at +i of xin^d / den (den with constant coefficients), cached."""
    from .scalars import Poly
    from .halfplane import _decompose_scalar

    key = (den, d)
    hit = _RESIDUE_BASIS.get(key)
    if hit is None:
        num = Poly.var(XIN, d) if d else Poly.const(1)
        plus, _, _ = _decompose_scalar(ScalarExpr(num, den))
        res = plus.get(1, S_ZERO)
        if not res.num.is_const():
            raise EngineError("internal: non-constant basis residue")
        hit = res.num.const_value()
        _RESIDUE_BASIS[key] = hit
    return hit


def integrate_xi_n(expr: "CliffordExpr | ScalarExpr") -> CliffordExpr:
    """Exact integral over the real xin line via the residue at +i.

    Requires poles only at +/-i and decay of order >= 2; the result carries
    the transcendental pi symbolically.  The integral is linear over xin-free
    coefficients, so each coefficient is expanded against cached residues of
    xin^d / den.
    """
    if isinstance(expr, ScalarExpr):
        expr = CliffordExpr.scalar(expr)
    out = CliffordExpr()
    two_pi_i = _PI_VAR * ScalarExpr.const(GRat(0, 2))
    for mono, coeff in expr.terms.items():
        _check_decay(coeff)
        acc = S_ZERO
        for d, cp in sorted(coeff.num.coeffs_in(XIN).items()):
            res = _residue_basis(coeff.den, d)
            if not res.is_zero():
                acc = acc + ScalarExpr.from_poly(cp) * ScalarExpr.const(res)
        if not acc.is_zero():
            out = out + CliffordExpr({mono: acc * two_pi_i})
    return out


def residue_derivative_oracle(coeff: ScalarExpr) -> ScalarExpr:
    """Residue at +i via (1/(m-1)!) d^(m-1)/dxin^(m-1)[(xin-i)^m f] at xin = i.

    Independent of the partial-fraction route; used as an exact cross-check.
    """
    _, p, q = _factor_pole_denominator(coeff.den)
    if p == 0:
        return S_ZERO
    lin = ScalarExpr.var(XIN) - _POLE_PLUS
    g = coeff * lin ** p
    fact = 1
    for k in range(1, p):
        fact *= k
        g = g.differentiate(XIN)
    return g.substitute({XIN: _POLE_PLUS}) / ScalarExpr.const(fact)


def integrate_via_residue_oracle(expr: "CliffordExpr | ScalarExpr") -> CliffordExpr:
    """2*pi*i times the derivative-formula residue, coefficient by coefficient."""
    if isinstance(expr, ScalarExpr):
        expr = CliffordExpr.scalar(expr)
    out = CliffordExpr()
    two_pi_i = _PI_VAR * ScalarExpr.const(GRat(0, 2))
    for mono, coeff in expr.terms.items():
        _check_decay(coeff)
        res = residue_derivative_oracle(coeff)
        out = out + CliffordExpr({mono: res * two_pi_i})
    return out


# ---------------------------------------------------------------------------
# Numeric contour oracle
# ---------------------------------------------------------------------------

def _univariate_complex_coeffs(p: Poly, bindings: Mapping[int, GRat]) -> np.ndarray:
    """Coefficients of p as a polynomial in xin, all other variables bound."""
    deg = max(p.degree_in(XIN), 0)
    out = np.zeros(deg + 1, dtype=complex)
    for d, cp in p.coeffs_in(XIN).items():
        out[d] = cp.eval_numeric(bindings).to_complex()
    return out


def numeric_contour_oracle(
    coeff: ScalarExpr, bindings: Mapping | None = None, tol: float = 1e-10
) -> complex:
    """Adaptive quadrature of coeff over the real line; testing only."""
    from scipy.integrate import quad

    ids: dict = {}
    for key, val in (bindings or {}).items():
        sym = key if isinstance(key, int) else REG.id_of(key)
        ids[sym] = GRat.of(val)
    _check_decay(coeff)
    num_c = _univariate_complex_coeffs(coeff.num, ids)
    den_c = _univariate_complex_coeffs(coeff.den, ids)

    def f(x: float) -> complex:
        return np.polyval(num_c[::-1], x) / np.polyval(den_c[::-1], x)

    re, re_err = quad(lambda x: f(x).real, -np.inf, np.inf, epsabs=tol, epsrel=tol, limit=400)
    im, im_err = quad(lambda x: f(x).imag, -np.inf, np.inf, epsabs=tol, epsrel=tol, limit=400)
    if re_err + im_err > 1e-6:
        raise EngineError("non-convergent tail in numeric quadrature")
    return complex(re, im)


# ---------------------------------------------------------------------------
# Sphere moments
# ---------------------------------------------------------------------------

def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def monomial_moment(exponents: Sequence[int], sphere_dim: int = 3) -> Fraction:
    """Moment of prod xi_j^(e_j) over S^(sphere_dim - 1), normalized to total 1.

    Odd exponents integrate to zero; even ones follow
    prod (e_j - 1)!! / prod_{m=0}^{E/2-1} (d + 2m)  with d = sphere_dim.
    """
    if any(e % 2 for e in exponents):
        return Fraction(0)
    halves = sum(e // 2 for e in exponents)
    num = 1
    for e in exponents:
        num *= _double_factorial(e - 1)
    den = 1
    for m in range(halves):
        den *= sphere_dim + 2 * m
    return Fraction(num, den)


def sphere_moment(expr: ScalarExpr, sphere_dim: int = 3) -> ScalarExpr:
    """Exact integral over the unit tangential co-sphere, total volume Omega3.

    The input must not involve xin; tangential variables may appear only in
    the numerator.  Non-tangential factors pass through unchanged.
    """
    if XIN in expr.variables():
        raise EngineError("xin present in sphere integrand")
    if expr.den.variables() & _TANGENTIAL:
        raise EngineError("tangential variables in sphere-integrand denominator")
    total = S_ZERO
    for mono, c in expr.num.terms.items():
        exps = {sym: e for sym, e in mono}
        tang = [exps.pop(s, 0) for s in XI[:3]]
        factor = monomial_moment(tang, sphere_dim)
        if factor == 0:
            continue
        rest = tuple(sorted(exps.items()))
        passthrough = ScalarExpr.from_poly(Poly({rest: c}))
        total = total + passthrough * ScalarExpr.const(GRat(factor)) * _OMEGA3_VAR
    return total / ScalarExpr.from_poly(expr.den)


def sphere_mc_oracle(
    expr: ScalarExpr, n_samples: int = 400_000, seed: int = 7
) -> float:
    """Monte-Carlo sphere average times 4*pi; pure-tangential inputs only."""
    vars_used = expr.variables()
    if not vars_used <= _TANGENTIAL:
        raise EngineError("Monte-Carlo oracle handles pure tangential polynomials only")
    rng = np.random.default_rng(seed)
    v = rng.normal(size=(n_samples, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    acc = np.zeros(n_samples)
    for mono, c in expr.num.terms.items():
        term = np.full(n_samples, complex(c.to_complex()).real)
        for sym, e in mono:
            term = term * v[:, XI.index(sym)] ** e
        acc += term
    den = expr.den.const_value().to_complex().real
    return float(acc.mean() * 4.0 * np.pi / den)
