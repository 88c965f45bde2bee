from fractions import Fraction
from math import comb

import mpmath
import pytest

from sdbounds.quadratic import DomainError
from sdbounds.saddle import (PreconditionError, binomial_case, first_order_estimate,
                             gamma_series, hermite_profile_check, higher_order_estimate,
                             logconvexity_check, modulus_bound_check, rational_function)

ONE = rational_function([1])
THIRD = Fraction(1, 3)
G_CODE = rational_function([1], [1, -4, 6, -4, 1])  # 1/(1-t)^4
R0_GRID = [THIRD + Fraction(j, 400) for j in range(-6, 7)]


def test_binomial_oracle_first_order():
    rep = first_order_estimate(ONE, binomial_case(), THIRD, 60)
    assert rep.index == 30
    assert rep.exact == comb(60 + 30 - 1, 30)
    assert rep.relative_error < 0.05


def test_binomial_error_shrinks():
    errs = [first_order_estimate(ONE, binomial_case(), THIRD, n).relative_error
            for n in (50, 100, 200, 400)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert all(b <= a / 2 * 1.5 for a, b in zip(errs, errs[1:]))


def test_code_kernel_error_shrinks():
    a = first_order_estimate(ONE, G_CODE, Fraction(1, 10), 90).relative_error
    b = first_order_estimate(ONE, G_CODE, Fraction(1, 10), 180).relative_error
    assert b < a


def test_constant_G_rejected():
    with pytest.raises(DomainError):
        first_order_estimate(ONE, rational_function([2]), THIRD, 10)


def test_k1_matches_first_order():
    a = first_order_estimate(ONE, binomial_case(), THIRD, 60)
    b = higher_order_estimate(ONE, binomial_case(), THIRD, 60, 1)
    assert abs(a.estimate - b.estimate) < mpmath.mpf(10) ** -25 * abs(a.estimate)


@pytest.mark.parametrize("n", [60, 200])
def test_higher_order_improves(n):
    e1 = higher_order_estimate(ONE, binomial_case(), THIRD, n, 1).relative_error
    e2 = higher_order_estimate(ONE, binomial_case(), THIRD, n, 2).relative_error
    e3 = higher_order_estimate(ONE, binomial_case(), THIRD, n, 3).relative_error
    assert e3 < e2 < e1


def test_nontrivial_F():
    F = rational_function([1, 2, 0, 1])
    e1 = higher_order_estimate(F, G_CODE, Fraction(1, 10), 180, 1).relative_error
    e3 = higher_order_estimate(F, G_CODE, Fraction(1, 10), 180, 3).relative_error
    assert e3 < e1 < 0.05


def test_needs_consecutive_coefficients():
    with pytest.raises(PreconditionError):
        higher_order_estimate(ONE, rational_function([1], [1, 0, -1]), THIRD, 60, 2)


def test_gamma_binomial_leading_terms():
    # kappa_2 = 1 and higher cumulants zero: Gaussian, gamma(x) = x
    kap = [0, 0, mpmath.mpf(1)] + [mpmath.mpf(0)] * 8
    g = gamma_series(kap, 3)
    assert abs(g[1] - 1) < 1e-30 and all(abs(c) < 1e-30 for c in g[2:])


def test_profile_k0():
    rep = hermite_profile_check(ONE, binomial_case(), THIRD, 0, 100, R0_GRID)
    assert all(abs(row["ratio"] - 1) < 1e-30 for row in rep.rows)


def test_profile_k1_flip():
    F = rational_function([-THIRD, 1])
    rep = hermite_profile_check(F, binomial_case(), THIRD, 1, 400, R0_GRID)
    assert rep.flip_ok
    lo, hi = rep.flip_between
    assert hi - lo <= Fraction(1, 400) + 1e-15
    assert abs((lo + hi) / 2 - THIRD) <= Fraction(1, 800) + 1e-15


def test_profile_k2_at_center():
    F = rational_function([THIRD ** 2, -2 * THIRD, 1])
    rep = hermite_profile_check(F, binomial_case(), THIRD, 2, 400, [THIRD])
    row = rep.rows[0]
    # h2(0) = -1 and F''(r0)/2 = 1, so the prediction is -1/scale
    assert row["ratio"] < 0
    assert abs(row["ratio"] / row["predicted"] - 1) < 0.2


def test_logconvexity():
    assert logconvexity_check(rational_function([1, 1]), [-1]).all_positive
    grid = [-3 + j * (mpmath.log(0.9) + 3) / 21 for j in range(1, 21)]
    assert logconvexity_check(G_CODE, grid).all_positive
    with pytest.raises(PreconditionError):
        logconvexity_check(rational_function([0, 0, 0, 1]), [-1])


def test_modulus_bound():
    assert modulus_bound_check(G_CODE, Fraction(1, 2), samples=50, seed=0)["ok"]
    assert modulus_bound_check(rational_function([1, 3, 0, 2]), Fraction(4, 5))["ok"]


def test_exact_is_reproducible():
    a = first_order_estimate(ONE, G_CODE, Fraction(1, 10), 90)
    b = first_order_estimate(ONE, G_CODE, Fraction(1, 10), 90)
    assert a.exact == b.exact and a.to_json() == b.to_json()
