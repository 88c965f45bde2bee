from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from sdbounds.quadratic import DomainError, Quad, exact_sign, squarefree_decompose, to_mpf

small = st.fractions(min_value=-50, max_value=50, max_denominator=30)
fields = st.sampled_from([2, 3, 5, 6, 7])


@given(small, small, fields)
def test_sign_matches_high_precision(a, b, D):
    x = Quad(a, b, D)
    with mpmath.workprec(200):
        v = to_mpf(x)
    assert exact_sign(x) == (0 if v == 0 else (1 if v > 0 else -1))


@given(small, small, small, small, fields)
def test_field_arithmetic_against_floats(a, b, c, d, D):
    x, y = Quad(a, b, D), Quad(c, d, D)
    with mpmath.workprec(200):
        for exact, approx in [(x + y, to_mpf(x) + to_mpf(y)), (x * y, to_mpf(x) * to_mpf(y)),
                              (x - y, to_mpf(x) - to_mpf(y))]:
            assert abs(to_mpf(exact) - approx) < mpmath.mpf(2) ** -150 * (1 + abs(approx))


@given(small, small, fields)
def test_inverse(a, b, D):
    x = Quad(a, b, D)
    if x.sign() == 0:
        return
    assert x * x.inverse() == 1


def test_sqrt_recognizes_squares():
    assert Quad.sqrt(9) == 3 and isinstance(Quad.sqrt(9), Fraction)
    r = Quad.sqrt(12)
    assert r == Quad(0, 2, 3) and r * r == 12


def test_squarefree():
    assert squarefree_decompose(12) == (2, 3)
    assert squarefree_decompose(5) == (1, 5)


def test_mixing_fields_fails():
    with pytest.raises(DomainError):
        Quad(0, 1, 2) + Quad(0, 1, 3)


def test_ordering_exact():
    t0 = Quad(Fraction(-3, 11), Fraction(2, 11), 5)
    assert Fraction(1, 8) < t0 < Fraction(1, 7)
    assert str(t0) == "-3/11+2/11*sqrt(5)"
