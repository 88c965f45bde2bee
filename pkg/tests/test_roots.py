from fractions import Fraction

import mpmath
from hypothesis import given, strategies as st

from sdbounds.quadratic import Quad
from sdbounds.roots import (count_roots, isolate_real_roots, isolate_root, peval,
                            smallest_positive_root, smallest_real_root, sturm_sequence)


def test_rational_root_exact():
    r = smallest_real_root([1, 0, -1])
    assert r.exact == -1


def test_quadratic_root_recognized():
    r = smallest_real_root([0, -3, 0, 1])
    assert r.exact == Quad(0, -1, 3)


def test_z4_t0_recognized():
    # 11 t^2 + 6 t - 1 has the root (2 sqrt 5 - 3)/11
    r = smallest_positive_root([-1, 6, 11])
    assert r.exact == Quad(Fraction(-3, 11), Fraction(2, 11), 5)


def test_irrational_quartic_interval():
    p = [3, 0, -6, 0, 1]
    r = smallest_real_root(p)
    assert r.exact is None
    assert peval(p, r.lo) * peval(p, r.hi) <= 0
    assert abs(r.mid() + mpmath.sqrt(3 + mpmath.sqrt(6))) < 1e-30


@given(st.lists(st.integers(min_value=-6, max_value=6), min_size=1, max_size=5, unique=True))
def test_sturm_counts_distinct_roots(roots):
    p = [Fraction(1)]
    for r in roots:
        q = [Fraction(0)] * (len(p) + 1)
        for i, a in enumerate(p):
            q[i] -= r * a
            q[i + 1] += a
        p = q
    seq = sturm_sequence(p)
    assert count_roots(seq, Fraction(-7), Fraction(7)) == len(roots)
    iv = isolate_real_roots(p)
    assert len(iv) == len(roots)
    for (lo, hi), r in zip(iv, sorted(roots)):
        assert lo <= r <= hi


def test_isolate_root_width():
    r = isolate_root([-2, 0, 1], Fraction(1), Fraction(2), prec=100, recognize=False)
    assert r.hi - r.lo <= Fraction(1, 2 ** 100)
