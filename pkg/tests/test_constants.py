from fractions import Fraction

import mpmath
import pytest

from sdbounds.constants import (REMARK_CODES, REMARK_LATTICES, asymptotic_bound,
                                closed_form_code, find_t0, find_t0_prime, find_t1,
                                lattice_t0, z4_polynomial_check)
from sdbounds.families import get_family
from sdbounds.lagrange import ratio_fg
from sdbounds.quadratic import Quad, exact_sign, to_mpf
from sdbounds.roots import peval

QUARTIC = [1, -644, 6, -644, 1]  # constant term first


@pytest.mark.parametrize("tag,t0", [("code-2-4", Fraction(1, 5)), ("code-3-3", Fraction(1, 4)),
                                    ("code-4-2", Fraction(1, 3)), ("code-2-2", Fraction(1, 3)),
                                    ("code-5-1", Fraction(1, 2))])
def test_t0_is_one_over_c_plus_one(tag, t0):
    assert find_t0(get_family(tag, 24 * 12 if not tag.endswith("-1") else 24)).exact == t0


def test_z4_t0_quadratic():
    t0 = find_t0(get_family("z4-type2", 24))
    assert t0.exact == Quad(Fraction(-3, 11), Fraction(2, 11), 5)


@pytest.mark.parametrize("tag,value", sorted(REMARK_CODES.items()))
def test_code_bounds(tag, value):
    ac = asymptotic_bound(tag)
    assert abs(ac.bound - mpmath.mpf(value)) < 1e-9
    assert ac.checks["closed_form_agrees"] and ac.checks["ordering_ok"]
    assert ac.checks["closed_t0_prime_in_interval"]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 9])
def test_c_equals_one_exact(q):
    ac = asymptotic_bound(f"code-{q}-1")
    assert ac.bound_exact == Fraction(1, 2) - Fraction(1, 2 * q)


def test_quantum_exact():
    assert asymptotic_bound("quantum-2").bound_exact == Fraction(3, 8)
    assert asymptotic_bound("quantum-3").bound_exact == Fraction(4, 9)


def test_ordering_and_defining_property():
    inst = get_family("code-3-3", 288)
    t0 = find_t0(inst)
    t1 = find_t1(inst, t0)
    tp = find_t0_prime(inst, 128, t0, t1)
    assert 0 < tp.lo and tp.hi < t1.lo and t1.hi < t0.exact
    R = ratio_fg(inst, t0.exact)
    lo = exact_sign(ratio_fg(inst, tp.lo) - R)
    hi = exact_sign(ratio_fg(inst, tp.hi) - R)
    assert lo * hi < 0


def test_worked_quartic_straddle_and_closed_form():
    tp = find_t0_prime(get_family("code-2-4", 288), 128)
    s_lo, s_hi = peval(QUARTIC, tp.lo), peval(QUARTIC, tp.hi)
    assert s_lo * s_hi < 0
    with mpmath.workprec(160):
        s = mpmath.mpf(5) ** (-mpmath.mpf(1) / 4)
        closed = ((1 - s) / (1 + s)) ** 4
        assert to_mpf(tp.lo) <= closed <= to_mpf(tp.hi)
        assert abs(peval([mpmath.mpf(c) for c in QUARTIC], closed)) < mpmath.mpf(2) ** -110


def test_closed_form_record():
    cf = closed_form_code(2, 4)
    assert abs(cf["bound"] - mpmath.mpf(REMARK_CODES["code-2-4"])) < 1e-10


LEVELS_OK = [N for N in REMARK_LATTICES if N != 15]


@pytest.mark.parametrize("N", LEVELS_OK)
def test_lattice_table(N):
    ac = asymptotic_bound(f"lattice-{N}")
    assert abs(ac.bound - mpmath.mpf(REMARK_LATTICES[N])) < 1e-8
    assert ac.bound_err < 1e-30
    assert abs(ac.checks["lg_t0_prime_series_diff"]) < 1e-20


@pytest.mark.xfail(strict=True, reason="printed N=15 value equals the root q0, not the bound")
def test_lattice_table_level_15():
    ac = asymptotic_bound("lattice-15")
    assert abs(ac.bound - mpmath.mpf(REMARK_LATTICES[15])) < 1e-8


def test_level_15_printed_value_is_the_root():
    t0 = lattice_t0(15)
    assert abs(t0.mid() - mpmath.mpf(REMARK_LATTICES[15])) < 1e-9


def test_lattice_truncation_insensitive():
    a = lattice_t0(23, 96, M=400)
    b = lattice_t0(23, 96, M=800)
    assert max(a.lo, b.lo) <= min(a.hi, b.hi)


def test_z4_polynomial():
    rep = z4_polynomial_check(128)
    assert abs(rep["bound"] - mpmath.mpf("0.3332625492")) < 1e-8
    assert abs(rep["residual"]) < 1e-20
    assert rep["t0_closed_form_diff"] < mpmath.mpf(2) ** -120
    assert rep["poly_at_zero"] == -81


def test_shadow_binary_constant():
    ac = asymptotic_bound("binary-sd-shadow")
    assert ac.checks["closed_t0_prime_in_interval"]
    assert abs(ac.bound - mpmath.mpf("0.1656298476")) < 1e-9
