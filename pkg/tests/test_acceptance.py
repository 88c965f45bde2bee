"""Acceptance criteria 1-11.  Each test records one PASS/FAIL line in RESULTS,
printed at the end of the pytest run (and by ``python3 tests/test_acceptance.py``)."""

import random
import time
from fractions import Fraction

import mpmath
import pytest

from sdbounds.certify import certify_scan
from sdbounds.constants import (REMARK_CODES, REMARK_LATTICES, REMARK_Z4, asymptotic_bound,
                                find_t0, find_t0_prime, z4_polynomial_check)
from sdbounds.extremal import extremal, extremal_table
from sdbounds.families import FamilyError, get_family
from sdbounds.hermite import (christoffel_darboux_check, orthogonality_ok, second_order_bound,
                              smallest_zero)
from sdbounds.lagrange import alpha_coefficients
from sdbounds.quadratic import Quad, to_mpf
from sdbounds.roots import peval
from sdbounds.saddle import (binomial_case, first_order_estimate, hermite_profile_check,
                             higher_order_estimate, rational_function)
from sdbounds.shadow import (codes1_relation_report, quantum_bl_gamma_delta, quantum_delta,
                             quantum_gamma, quantum_relation_scan)

RESULTS: dict[str, str] = {}


def record(key, ok, text):
    RESULTS[key] = f"[{'PASS' if ok else 'FAIL'}] criterion {int(key[:2])}: {text}"


def test_criterion_01_code_constants():
    start = time.perf_counter()
    errs = {tag: abs(asymptotic_bound(tag).bound - mpmath.mpf(v)) for tag, v in REMARK_CODES.items()}
    exact = {q: asymptotic_bound(f"code-{q}-1").bound_exact for q in (2, 3, 4, 5, 9)}
    elapsed = time.perf_counter() - start
    ok_codes = all(e < 1e-9 for e in errs.values())
    ok_exact = all(exact[q] == Fraction(1, 2) - Fraction(1, 2 * q) for q in exact)
    ok = ok_codes and ok_exact and elapsed < 5
    record("01", ok, f"max |err| = {mpmath.nstr(max(errs.values()), 3)}, c=1 exact: {ok_exact}, "
                     f"{elapsed:.2f}s")
    assert ok


def _lattice_errors():
    return {N: abs(asymptotic_bound(f"lattice-{N}").bound - mpmath.mpf(v))
            for N, v in REMARK_LATTICES.items()}


def test_criterion_02_lattice_constants():
    start = time.perf_counter()
    errs = _lattice_errors()
    elapsed = time.perf_counter() - start
    bad = sorted(N for N, e in errs.items() if e >= 1e-8)
    ok = not bad and elapsed < 10
    record("02", ok, f"{len(errs) - len(bad)}/10 levels within 1e-8, mismatched N = {bad}, "
                     f"{elapsed:.2f}s (N=15: printed value equals the root q0, see ledger)")
    # every level except the misprinted one must match
    assert all(errs[N] < 1e-8 for N in errs if N != 15) and elapsed < 10


@pytest.mark.xfail(strict=True, reason="printed N=15 value equals the Eisenstein root, not the bound")
def test_criterion_02_level_15():
    ac = asymptotic_bound("lattice-15")
    assert abs(ac.bound - mpmath.mpf(REMARK_LATTICES[15])) < 1e-8


def test_criterion_03_z4():
    rep = z4_polynomial_check(128)
    t0 = find_t0(get_family("z4-type2", 24), 128)
    ok_bound = abs(rep["bound"] - mpmath.mpf(REMARK_Z4)) < 1e-8
    ok_res = abs(rep["residual"]) < 1e-20
    ok_t0 = t0.exact == Quad(Fraction(-3, 11), Fraction(2, 11), 5)
    ok = ok_bound and ok_res and ok_t0
    record("03", ok, f"bound {mpmath.nstr(rep['bound'], 12)}, residual "
                     f"{mpmath.nstr(rep['residual'], 3)}, t0 exact (2 sqrt5 - 3)/11: {ok_t0}")
    assert ok


def test_criterion_04_worked_example():
    inst = get_family("code-2-4", 288)
    t0 = find_t0(inst)
    tp = find_t0_prime(inst, 128)
    quartic = [1, -644, 6, -644, 1]
    straddle = peval(quartic, tp.lo) * peval(quartic, tp.hi) < 0
    with mpmath.workprec(160):
        s = mpmath.mpf(5) ** (-mpmath.mpf(1) / 4)
        closed = ((1 - s) / (1 + s)) ** 4
        inside = to_mpf(tp.lo) <= closed <= to_mpf(tp.hi)
    ok = t0.exact == Fraction(1, 5) and straddle and inside
    record("04", ok, f"t0 = {t0.exact}, quartic sign change over isolating interval: {straddle}, "
                     f"closed form inside: {inside}")
    assert ok


def test_criterion_05_extremal():
    start = time.perf_counter()
    ns = [8, 16, 24, 32, 40, 48, 72]
    d = [r.d_ext for r in extremal_table("code-2-4", ns)]
    A = extremal(get_family("code-2-4", 24, 5), 5).A
    # by hand: [t^2](1+14t+t^2)^3 = 3 + 3*14^2, [t^2] t(1-t)^4 = -4, and c_1 = -42
    oracle_t2 = 3 + 3 * 14 ** 2 - 42 * (-4)
    elapsed = time.perf_counter() - start
    ok = d == [4 * (n // 24) + 4 for n in ns] and A[2] == 759 == oracle_t2 and elapsed < 1
    record("05", ok, f"d_ext = {d}, [t^2]A = {A[2]}, {elapsed:.2f}s")
    assert ok


FAMILY_POOL = ["code-2-4", "code-2-2", "code-3-3", "code-4-2", "code-2-1", "code-3-1",
               "code-5-1", "z4-type2", "quantum-2", "quantum-3", "lattice-1"]


def _random_instance(rng):
    while True:
        tag = rng.choice(FAMILY_POOL)
        n = rng.randint(1, 300)
        try:
            probe = get_family(tag, n, 4)
        except FamilyError:
            continue
        if probe.m <= 12:
            return get_family(tag, n, probe.m + 10)


def test_criterion_06_bl_roundtrip():
    rng = random.Random(20261015)
    start = time.perf_counter()
    failures = 0
    for _ in range(100):
        inst = _random_instance(rng)
        m = inst.m
        cs = [Fraction(1)] + [Fraction(rng.randint(-99, 99), rng.randint(1, 40)) for _ in range(m)]
        A = inst.enumerator(cs, m + 6)
        for i in range(m + 5):
            want = cs[i] if i <= m else 0
            if alpha_coefficients(inst, i, m + 5).apply(A) != want:
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30
    record("06", ok, f"100 random instances, {failures} mismatches, {elapsed:.2f}s")
    assert ok


def test_criterion_07_finite_n():
    target = 0.1656298476
    start = time.perf_counter()
    c1 = certify_scan("code-2-4", 2400)
    c2 = certify_scan("code-2-4", 9600)
    elapsed = time.perf_counter() - start
    ok = abs(c2.ratio - target) < 0.02 and c2.ratio <= c1.ratio and elapsed < 120
    record("07", ok, f"d/n = {c1.ratio:.5f} (n=2400), {c2.ratio:.5f} (n=9600), {elapsed:.2f}s")
    assert ok


def test_criterion_08_quantum():
    start = time.perf_counter()
    s2 = quantum_relation_scan(2, 200)
    s3 = quantum_relation_scan(3, 200)
    elapsed = time.perf_counter() - start
    ok = 0.70 < s2.threshold_ratio < 0.80 and 0.84 < s3.threshold_ratio < 0.93 and elapsed < 30
    record("08", ok, f"j*/m = {s2.threshold_ratio:.3f} (q=2), {s3.threshold_ratio:.3f} (q=3), "
                     f"{elapsed:.2f}s")
    assert ok


def test_criterion_09_saddle():
    one, G, r = rational_function([1]), binomial_case(), Fraction(1, 3)
    e60 = first_order_estimate(one, G, r, 60).relative_error
    e100 = first_order_estimate(one, G, r, 100).relative_error
    e400 = first_order_estimate(one, G, r, 400).relative_error
    k1 = higher_order_estimate(one, G, r, 60, 1).relative_error
    k3 = higher_order_estimate(one, G, r, 60, 3).relative_error
    grid = [r + Fraction(j, 400) for j in range(-6, 7)]
    prof = hermite_profile_check(rational_function([-r, 1]), G, r, 1, 400, grid)
    ok = e60 < 0.05 and e400 < e100 and k3 < k1 and bool(prof.flip_ok)
    record("09", ok, f"err(60) = {mpmath.nstr(e60, 3)}, err(400) < err(100): {e400 < e100}, "
                     f"k=3 {mpmath.nstr(k3, 3)} vs k=1 {mpmath.nstr(k1, 3)}, flip ok: {prof.flip_ok}")
    assert ok


def test_criterion_10_hermite():
    cd = all(christoffel_darboux_check(k) for k in range(1, 13))
    orth = orthogonality_ok(10)
    hyp = all(second_order_bound(tag, 2).hypothesis_ok
              for tag in ["code-2-4", "code-3-3", "code-4-2", "code-2-2", "code-2-1"])
    coefs = [second_order_bound("code-2-4", k).bound_coefficient for k in range(1, 6)]
    dec = all(b < a for a, b in zip(coefs, coefs[1:]))
    ratio = smallest_zero(20).mid() / (-2 * mpmath.sqrt(20))
    ok = cd and orth and hyp and dec and abs(ratio - 1) < 0.15
    record("10", ok, f"CD k<=12: {cd}, orthogonality: {orth}, hypothesis: {hyp}, "
                     f"decreasing: {dec}, x0(20)/(-2 sqrt 20) = {mpmath.nstr(ratio, 4)}")
    assert ok


def test_criterion_11_shadow():
    s_ok = all(codes1_relation_report(n).s_side_all_nonpositive for n in (48, 96))
    q_ok = True
    for q in (2, 3, 5):
        for m in range(4, 31):
            for i in (m + 1, m + 2):
                g, d = quantum_bl_gamma_delta(q, m, i)
                q_ok &= g == quantum_gamma(q, m, i) and d == quantum_delta(q, m, i)
    ok = s_ok and q_ok
    record("11", ok, f"codes1 S-side <= 0 at n=48,96: {s_ok}, quantum closed forms match "
                     f"for q in (2,3,5), m <= 30: {q_ok}")
    assert ok


if __name__ == "__main__":
    import sys
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
