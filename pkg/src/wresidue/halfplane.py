"""Projections pi+ and pi' on rational functions of xin with poles at +/-i.

After restriction to the unit tangential co-sphere, every symbol coefficient
is a rational function of xin whose denominator is a product of powers of
(xin - i) and (xin + i).  Partial fractions split such a function into
principal parts at the two poles plus a polynomial part; pi+ keeps the
principal parts at +i, pi- collects the -i parts together with the
polynomial part, and pi' returns i times the residue at +i (the normalized
upper contour integral).  The decomposition is validated by exact
reassembly on every call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .gaussian import GRat, I
from .scalars import (
    EngineError,
    Poly,
    ScalarExpr,
    S_ZERO,
    XIN,
    _as_scalar,
)
from .clifford import CliffordExpr

_XIN_VAR = ScalarExpr.var(XIN)
_POLE_PLUS = ScalarExpr.const(I)
_POLE_MINUS = ScalarExpr.const(-I)
_LIN_PLUS = _XIN_VAR - _POLE_PLUS   # xin - i
_LIN_MINUS = _XIN_VAR - _POLE_MINUS  # xin + i


def _factor_pole_denominator(den: Poly) -> Tuple[GRat, int, int]:
    """Write den = c * (xin - i)^p * (xin + i)^q; reject other factors."""
    extra = den.variables() - {XIN}
    if extra:
        from .scalars import REG

        names = ", ".join(sorted(REG.name_of(s) for s in extra))
        raise EngineError(f"denominator depends on {names}; poles must be in xin only")
    work = ScalarExpr.from_poly(den)
    p = q = 0
    lin_p = _LIN_PLUS
    lin_m = _LIN_MINUS
    while True:
        if work.evaluate({XIN: I}).is_zero():
            work = work / lin_p
            p += 1
        else:
            break
    while True:
        if work.evaluate({XIN: -I}).is_zero():
            work = work / lin_m
            q += 1
        else:
            break
    if not work.num.is_const() or not work.is_poly():
        raise EngineError(
            f"pole outside +/-i: offending denominator factor {work.text()}"
        )
    return work.num.const_value(), p, q


def _poly_div_univariate(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    """Divide num by den treating xin as the main variable; den univariate."""
    dd = den.degree_in(XIN)
    den_c = den.coeffs_in(XIN)
    lead = den_c[dd].const_value()
    quo = Poly()
    rem = num
    while True:
        dr = rem.degree_in(XIN)
        if rem.is_zero() or dr < dd:
            return quo, rem
        rc = rem.coeffs_in(XIN)
        head = rc[dr].scale(lead.inverse())
        shift = Poly.var(XIN, dr - dd) if dr > dd else Poly.const(1)
        term = head * shift
        quo = quo + term
        rem = rem - term * den


@dataclass
class HalfLineRational:
    """Partial-fraction data: principal parts at +/-i and a polynomial part."""

    plus: Dict[int, CliffordExpr] = field(default_factory=dict)   # mult -> coeff
    minus: Dict[int, CliffordExpr] = field(default_factory=dict)  # mult -> coeff
    poly: Dict[int, CliffordExpr] = field(default_factory=dict)   # xin degree -> coeff

    def reassemble(self) -> CliffordExpr:
        total = CliffordExpr()
        for m, c in self.plus.items():
            total = total + c.scale(_LIN_PLUS ** (-m))
        for m, c in self.minus.items():
            total = total + c.scale(_LIN_MINUS ** (-m))
        for d, c in self.poly.items():
            total = total + c.scale(_XIN_VAR ** d)
        return total

    def pi_plus_part(self) -> CliffordExpr:
        total = CliffordExpr()
        for m, c in self.plus.items():
            total = total + c.scale(_LIN_PLUS ** (-m))
        return total

    def pi_minus_part(self) -> CliffordExpr:
        total = CliffordExpr()
        for m, c in self.minus.items():
            total = total + c.scale(_LIN_MINUS ** (-m))
        for d, c in self.poly.items():
            total = total + c.scale(_XIN_VAR ** d)
        return total

    def residue_plus(self) -> CliffordExpr:
        return self.plus.get(1, CliffordExpr())


def _decompose_scalar(f: ScalarExpr) -> Tuple[Dict[int, ScalarExpr], Dict[int, ScalarExpr], Dict[int, ScalarExpr]]:
    const, p, q = _factor_pole_denominator(f.den)
    inv_const = ScalarExpr.const(const.inverse())
    quo, rem = _poly_div_univariate(f.num, f.den)
    poly_part: Dict[int, ScalarExpr] = {}
    if not quo.is_zero():
        poly_part = {d: ScalarExpr.from_poly(cp) for d, cp in quo.coeffs_in(XIN).items()}
    plus: Dict[int, ScalarExpr] = {}
    minus: Dict[int, ScalarExpr] = {}
    rem_expr = ScalarExpr.from_poly(rem) * inv_const
    if p:
        g = rem_expr / (_LIN_MINUS ** q)
        fact = 1
        for k in range(p):
            if k:
                fact *= k
                g = g.differentiate(XIN)
            coeff = g.substitute({XIN: _POLE_PLUS}) / ScalarExpr.const(fact)
            if not coeff.is_zero():
                plus[p - k] = coeff
    if q:
        g = rem_expr / (_LIN_PLUS ** p)
        fact = 1
        for k in range(q):
            if k:
                fact *= k
                g = g.differentiate(XIN)
            coeff = g.substitute({XIN: _POLE_MINUS}) / ScalarExpr.const(fact)
            if not coeff.is_zero():
                minus[q - k] = coeff
    return plus, minus, poly_part


def partial_fractions(expr: "CliffordExpr | ScalarExpr") -> HalfLineRational:
    """Exact decomposition into principal parts at +/-i plus polynomial part.

    Accepts a Clifford-valued rational function of xin (scalars are wrapped);
    validates by reassembling and comparing with the input.
    """
    if isinstance(expr, ScalarExpr):
        expr = CliffordExpr.scalar(expr)
    out = HalfLineRational()

    def _merge(target: Dict[int, CliffordExpr], key: int, mono, coeff: ScalarExpr):
        cur = target.get(key, CliffordExpr())
        target[key] = cur + CliffordExpr({mono: coeff})

    for mono, coeff in expr.terms.items():
        plus, minus, poly = _decompose_scalar(coeff)
        for m, c in plus.items():
            _merge(out.plus, m, mono, c)
        for m, c in minus.items():
            _merge(out.minus, m, mono, c)
        for d, c in poly.items():
            _merge(out.poly, d, mono, c)
    check = out.reassemble() - expr
    if not check.is_zero():
        raise EngineError("internal: partial-fraction reassembly mismatch")
    return out


def pi_plus(expr: "CliffordExpr | ScalarExpr") -> CliffordExpr:
    """Principal parts at +i; the polynomial part and -i parts are dropped."""
    return partial_fractions(expr).pi_plus_part()


_PI_PLUS_BASIS: Dict[Tuple[Poly, int], ScalarExpr] = {}


def _pi_plus_basis(den: Poly, d: int) -> ScalarExpr:
    """pi+ of xin^d / den, cached; reassembly-validated on the basis element."""
    key = (den, d)
    hit = _PI_PLUS_BASIS.get(key)
    if hit is not None:
        return hit
    num = Poly.var(XIN, d) if d else Poly.const(1)
    f = ScalarExpr(num, den)
    plus, minus, poly = _decompose_scalar(f)
    out = S_ZERO
    check = S_ZERO
    for m, c in plus.items():
        part = c * _LIN_PLUS ** (-m)
        out = out + part
        check = check + part
    for m, c in minus.items():
        check = check + c * _LIN_MINUS ** (-m)
    for dd, c in poly.items():
        check = check + c * _XIN_VAR ** dd
    if not (check - f).is_zero():
        raise EngineError("internal: partial-fraction reassembly mismatch")
    _PI_PLUS_BASIS[key] = out
    return out


def pi_plus_scalar(f: ScalarExpr) -> ScalarExpr:
    """pi+ on a single scalar coefficient.

    pi+ is linear over xin-free coefficients, so the input is decomposed
    against cached projections of xin^d / den.
    """
    if f.is_zero():
        return S_ZERO
    out = S_ZERO
    for d, cp in sorted(f.num.coeffs_in(XIN).items()):
        out = out + ScalarExpr.from_poly(cp) * _pi_plus_basis(f.den, d)
    return out


def pi_minus(expr: "CliffordExpr | ScalarExpr") -> CliffordExpr:
    """Complement of pi+: -i principal parts plus the polynomial part."""
    return partial_fractions(expr).pi_minus_part()


def pi_prime(expr: "CliffordExpr | ScalarExpr") -> CliffordExpr:
    """(1/2pi) * upper contour integral = i * residue at +i."""
    return partial_fractions(expr).residue_plus().scale(ScalarExpr.const(I))
