import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from gradedpi.scalars import (CycScalar, DivisionByZero, LiteralError, OrderMismatch, cyclotomic_poly,
                              format_scalar, parse_scalar, phi)

ORDERS = [1, 3, 4, 5, 8, 12]


def z(m, k=1):
    return CycScalar.zeta(m, k)


def q(m, x):
    return CycScalar.rational(m, x)


def test_zeta_times_zeta_squared():
    assert z(3) * z(3, 2) == q(3, 1)


def test_gaussian_product():
    one = q(4, 1)
    assert (one + z(4)) * (one - z(4)) == q(4, 2)


def test_rational_inverse():
    assert q(1, Fraction(3, 2)).inv() == q(1, Fraction(2, 3))


def test_conj_examples():
    assert z(3).conj() == z(3, 2)
    assert q(1, Fraction(5, 7)).conj() == q(1, Fraction(5, 7))
    a = q(4, 1) + z(4)
    assert a.conj() * a == q(4, 2)


def test_zero_inverse_raises():
    with pytest.raises(DivisionByZero):
        CycScalar.zero(3).inv()


def test_order_mismatch():
    with pytest.raises(OrderMismatch):
        z(3) + z(4)


def test_bad_literal():
    with pytest.raises(LiteralError):
        parse_scalar("1+*z", 3)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 8, 9, 12, 15])
def test_cyclotomic_poly_matches_sympy(m):
    x = sympy.Symbol("x")
    want = [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(m, x), x).all_coeffs())]
    assert [int(c) for c in cyclotomic_poly(m)] == want
    assert phi(m) == sympy.totient(m)


def scalars(m):
    coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
    return st.lists(coef, min_size=phi(m), max_size=phi(m)).map(lambda c: CycScalar(m, c))


@st.composite
def pair(draw):
    m = draw(st.sampled_from(ORDERS))
    return m, draw(scalars(m)), draw(scalars(m))


@given(pair())
def test_ring_ops_match_complex_embedding(p):
    m, a, b = p
    assert cmath.isclose((a * b).to_complex(), a.to_complex() * b.to_complex(), abs_tol=1e-9)
    assert cmath.isclose((a + b).to_complex(), a.to_complex() + b.to_complex(), abs_tol=1e-9)
    assert cmath.isclose(a.conj().to_complex(), a.to_complex().conjugate(), abs_tol=1e-9)


@given(pair())
def test_inverse(p):
    m, a, _ = p
    if a:
        assert a * a.inv() == q(m, 1)


@given(pair())
def test_galois_is_multiplicative(p):
    m, a, b = p
    for k in range(1, m + 1):
        if sympy.gcd(k, m) == 1:
            assert (a * b).galois(k) == a.galois(k) * b.galois(k)


@given(pair())
def test_format_parse_round_trip(p):
    m, a, _ = p
    assert parse_scalar(format_scalar(a), m) == a
