"""Half-plane projections via partial fractions at the poles +/-i."""

import random
from fractions import Fraction

import pytest

from wresidue.gaussian import GRat, I
from wresidue.scalars import EngineError, ScalarExpr, S_ONE, S_ZERO, sym
from wresidue.clifford import CliffordExpr
from wresidue.halfplane import (
    HalfLineRational,
    partial_fractions,
    pi_minus,
    pi_plus,
    pi_plus_scalar,
    pi_prime,
)

XIN = sym("xin")
IC = ScalarExpr.const(I)


def test_partial_fractions_simple_pole_pair():
    pf = partial_fractions(1 / (1 + XIN ** 2))
    want_plus = CliffordExpr.scalar(1 / (2 * IC))
    want_minus = CliffordExpr.scalar(-1 / (2 * IC))
    assert pf.plus == {1: want_plus}
    assert pf.minus == {1: want_minus}
    assert not pf.poly


def test_partial_fractions_polynomial_part():
    pf = partial_fractions(XIN ** 2 / (1 + XIN ** 2))
    assert pf.poly == {0: CliffordExpr.scalar(S_ONE)}
    assert set(pf.plus) == {1} and set(pf.minus) == {1}


def _solve_linear_system(matrix, rhs):
    """Exact Gaussian elimination over Q(i) (independent of the engine path)."""
    n = len(rhs)
    m = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if not m[r][col].is_zero())
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col].inverse()
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def test_partial_fractions_seven_coefficients_vs_linear_system():
    """1/((x-i)^5 (x+i)^2): clear denominators and solve the linear system."""
    f = 1 / ((XIN - IC) ** 5 * (XIN + IC) ** 2)
    pf = partial_fractions(f)
    assert len(pf.plus) == 5 and len(pf.minus) == 2 and not pf.poly
    # oracle: coefficients a_m, b_m with
    #   1 = sum_m a_m (x-i)^(5-m) (x+i)^2 + sum_m b_m (x+i)^(2-m) (x-i)^5
    # solved exactly as a 7x7 linear system in the monomial basis of x.
    from wresidue.scalars import XIN as XIN_ID

    unknown_shapes = [("plus", m) for m in range(1, 6)] + [("minus", m) for m in (1, 2)]
    columns = []
    for side, mult in unknown_shapes:
        if side == "plus":
            poly = (XIN - IC) ** (5 - mult) * (XIN + IC) ** 2
        else:
            poly = (XIN + IC) ** (2 - mult) * (XIN - IC) ** 5
        coeffs = poly.num.coeffs_in(XIN_ID)
        columns.append([coeffs.get(d, None) for d in range(7)])
    matrix = []
    for d in range(7):
        row = []
        for colvals in columns:
            cell = colvals[d]
            row.append(cell.const_value() if cell is not None else GRat(0))
        matrix.append(row)
    rhs = [GRat(1)] + [GRat(0)] * 6
    solved = _solve_linear_system(matrix, rhs)
    for (side, mult), val in zip(unknown_shapes, solved):
        got = (pf.plus if side == "plus" else pf.minus)[mult].scalar_part()
        assert got == ScalarExpr.const(val), (side, mult)


def test_reassembly_invariant():
    f = (XIN ** 3 - 2 * XIN + 5) / ((XIN - IC) ** 3 * (XIN + IC) ** 2)
    pf = partial_fractions(f)
    assert pf.reassemble() == CliffordExpr.scalar(f)


def test_pi_plus_examples():
    # tangential block of the order-zero projected symbol: pi+ of -q/(1+xin^2)
    q = sym("X1") * sym("Y1") * sym("xi1") ** 2
    f = -q * (1 / (1 + XIN ** 2))
    assert pi_plus(f) == CliffordExpr.scalar(q * IC / (2 * (XIN - IC)))
    assert pi_plus(1 / (XIN + IC)).is_zero()


def test_pi_plus_drops_polynomial_part():
    f = -(XIN ** 2) / (1 + XIN ** 2)
    out = pi_plus(f)
    assert out == CliffordExpr.scalar(-IC / (2 * (XIN - IC)))


def test_pi_plus_idempotent_and_complement():
    rng = random.Random(7)
    for _ in range(60):
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        num = S_ZERO
        for d in range(p + q):
            num = num + ScalarExpr.const(GRat(rng.randint(-4, 4), rng.randint(-4, 4))) * XIN ** d
        f = num / ((XIN - IC) ** p * (XIN + IC) ** q)
        plus = pi_plus(f)
        assert pi_plus(plus) == plus
        assert plus + pi_minus(f) == CliffordExpr.scalar(f)


def test_pi_plus_commutes_with_lower_half_multiplication():
    # pi+(pi+(f) * g) = pi+(f * g) when g has poles only at -i
    rng = random.Random(11)
    for _ in range(40):
        f = ScalarExpr.const(GRat(rng.randint(1, 5))) / (
            (XIN - IC) ** rng.randint(1, 2) * (XIN + IC) ** rng.randint(1, 2)
        )
        lower = 1 / (XIN + IC) ** rng.randint(1, 2)
        lhs = pi_plus(pi_plus(f).scalar_part() * lower)
        assert lhs == pi_plus(f * lower)


def test_pi_plus_commutes_with_xin_derivative():
    f = (XIN + 3) / ((XIN - IC) ** 2 * (XIN + IC) ** 2)
    lhs = pi_plus(f.differentiate("xin"))
    rhs = pi_plus(f).scalar_part().differentiate("xin")
    assert lhs == CliffordExpr.scalar(rhs)


def test_pi_plus_commutes_with_coefficient_derivative():
    # the boundary normal derivative acts on coefficients; h1 plays that role
    f = sym("h1") ** 2 / (1 + XIN ** 2) ** 2
    lhs = pi_plus(f.differentiate("h1"))
    rhs = pi_plus(f).scalar_part().differentiate("h1")
    assert lhs == CliffordExpr.scalar(rhs)


def test_pi_prime_examples():
    assert pi_prime(1 / (1 + XIN ** 2)) == CliffordExpr.scalar(
        ScalarExpr.const(GRat(Fraction(1, 2)))
    )
    assert pi_prime(1 / (XIN + IC)).is_zero()
    # pi' of the pi+ image equals pi' of the input on decaying functions
    f = (XIN - 2) / ((XIN - IC) ** 2 * (XIN + IC) ** 3)
    assert pi_prime(pi_plus(f).scalar_part()) == pi_prime(f)


def test_pole_elsewhere_rejected():
    with pytest.raises(EngineError) as err:
        partial_fractions(1 / (XIN - 1))
    assert "pole" in str(err.value)


def test_denominator_with_other_variables_rejected():
    with pytest.raises(EngineError):
        partial_fractions(1 / (sym("xi1") * (1 + XIN ** 2)))


def test_pi_plus_scalar_agrees_with_clifford_route():
    f = (XIN ** 2 + sym("h1")) / ((XIN - IC) ** 2 * (XIN + IC) ** 2)
    assert CliffordExpr.scalar(pi_plus_scalar(f)) == pi_plus(f)
