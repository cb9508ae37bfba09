"""Clifford algebra and the exact matrix oracle."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wresidue.gaussian import GRat
from wresidue.scalars import EngineError, ScalarExpr, S_ONE, S_ZERO, sym
from wresidue.clifford import (
    CL_ONE,
    CliffordExpr,
    cl_from_cotangent,
    cl_mul,
    cl_trace,
    cl_trace_product,
    clifford_inverse,
    matrix_oracle_trace,
)


def c(i):
    return CliffordExpr.gen(i)


def test_generator_relations():
    for i in range(1, 5):
        for j in range(1, 5):
            anti = cl_mul(c(i), c(j)) + cl_mul(c(j), c(i))
            want = CliffordExpr.scalar(-2 if i == j else 0)
            assert anti == want


def test_mul_examples():
    assert c(1) * c(1) == CliffordExpr.scalar(-1)
    assert c(2) * c(1) == -(c(1) * c(2))
    xi = [sym(f"xi{j}") for j in (1, 2, 3)]
    cxi = cl_from_cotangent(xi + [S_ZERO])
    assert cxi * cxi == CliffordExpr.scalar(-(xi[0] ** 2 + xi[1] ** 2 + xi[2] ** 2))


def test_trace_examples():
    assert cl_trace(CL_ONE) == ScalarExpr.const(4)
    assert cl_trace(c(1) * c(2)).is_zero()
    assert cl_trace(c(1) * c(2) * c(3) * c(4)).is_zero()


def test_from_cotangent():
    e2 = cl_from_cotangent([S_ZERO, S_ONE, S_ZERO, S_ZERO])
    assert e2 == c(2)
    assert cl_from_cotangent([S_ZERO] * 4).is_zero()
    with pytest.raises(EngineError):
        cl_from_cotangent([S_ONE] * 3)


def test_all_16_monomial_traces_match_matrix_oracle():
    for r in range(5):
        for mono in itertools.combinations(range(1, 5), r):
            expr = CliffordExpr({tuple(mono): S_ONE})
            assert cl_trace(expr).evaluate({}) == matrix_oracle_trace(expr, {}), mono


def test_matrix_oracle_traceless_generator_sum():
    expr = c(1) + c(2)
    assert matrix_oracle_trace(expr, {}) == GRat(0)


def test_matrix_oracle_top_monomial_derived_value():
    # independent 4x4 multiplication fixes the top-monomial trace
    expr = c(1) * c(2) * c(3) * c(4)
    assert matrix_oracle_trace(expr, {}) == GRat(0)


def test_matrix_oracle_unbound_rejected():
    expr = CliffordExpr.scalar(sym("h1"))
    with pytest.raises(EngineError):
        matrix_oracle_trace(expr, {})


def test_odd_monomial_against_cotangent_vector():
    from wresidue.symbols import c_xi_prime, torsion_u

    u = torsion_u()
    assert cl_trace(u * c_xi_prime(at_point=True)).is_zero()


def test_clifford_inverse_scalar_plus_vector():
    a = CliffordExpr.scalar(sym("h1")) + c(2).scale(ScalarExpr.const(3))
    inv = clifford_inverse(a)
    assert a * inv == CL_ONE
    with pytest.raises(EngineError):
        clifford_inverse(c(1) * c(2))


_rng = random.Random(20_24)


def _random_clifford(numeric=True):
    out = CliffordExpr()
    for _ in range(_rng.randint(1, 4)):
        mono = tuple(sorted(_rng.sample(range(1, 5), _rng.randint(0, 4))))
        coeff = GRat(Fraction(_rng.randint(-5, 5), _rng.randint(1, 4)),
                     Fraction(_rng.randint(-5, 5), _rng.randint(1, 4)))
        out = out + CliffordExpr({mono: ScalarExpr.const(coeff)})
    return out


def test_trace_linear_and_cyclic_randomized():
    for _ in range(300):
        a, b = _random_clifford(), _random_clifford()
        assert cl_trace(a + b) == cl_trace(a) + cl_trace(b)
        assert cl_trace(a * b) == cl_trace(b * a)
        assert cl_trace_product(a, b) == cl_trace(a * b)


def test_oracle_equivalence_with_symbolic_bindings():
    for k in range(100):
        terms = {}
        for _ in range(_rng.randint(1, 3)):
            mono = tuple(sorted(_rng.sample(range(1, 5), _rng.randint(0, 4))))
            terms[mono] = sym("h1") * ScalarExpr.const(_rng.randint(-3, 3)) + sym(
                "X1"
            ) * ScalarExpr.const(_rng.randint(-3, 3))
        expr = CliffordExpr(terms)
        bindings = {
            "h1": GRat(Fraction(_rng.randint(-4, 4), 3)),
            "X1": GRat(0, Fraction(_rng.randint(-4, 4), 2)),
        }
        assert cl_trace(expr).evaluate(bindings) == matrix_oracle_trace(expr, bindings)


@given(st.integers(0, 4), st.integers(0, 4))
@settings(max_examples=30, deadline=None)
def test_monomial_square_sign(k1, k2):
    from wresidue.clifford import _mono_square_sign

    mono = tuple(range(1, k1 + 1))
    expr = CliffordExpr({mono: S_ONE})
    square = expr * expr
    want = CliffordExpr.scalar(_mono_square_sign(len(mono)))
    assert square == want
