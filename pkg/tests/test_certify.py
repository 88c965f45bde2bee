import json
from fractions import Fraction

import mpmath
import pytest

from sdbounds.certify import (CertificationError, UnusableT3, certify, certify_scan,
                              default_grid, rational_below, relation_instance,
                              verify_certificate)
from sdbounds.constants import asymptotic_bound
from sdbounds.extremal import extremal
from sdbounds.families import get_family
from sdbounds.lagrange import relation_vector_pair


def test_rational_below():
    x = Fraction(314159, 100000)
    r = rational_below(x)
    assert r == Fraction(314, 100) and r <= x


def test_default_grid_inside_window():
    ac = asymptotic_bound("code-2-4", 96)
    grid = default_grid("code-2-4")
    assert len(grid) == 8 and all(ac.t0_prime.lo / 2 < t < ac.t0_prime.lo for t in grid)


def test_certificate_invariants():
    inst = relation_instance("code-2-4", 2400)
    cert = certify_scan("code-2-4", 2400)
    rv = relation_vector_pair(inst, cert.t3).values
    assert rv[0] > 0
    assert all(v >= 0 for v in rv[cert.D:])
    assert cert.D == 1 or rv[cert.D - 1] < 0
    assert cert.d_bound == inst.c * (cert.D - 1)
    D_over_m = mpmath.mpf(cert.D) / inst.m
    lg = asymptotic_bound("code-2-4").lg_t0_prime
    assert D_over_m <= lg + mpmath.mpf("0.10")


def test_replay_roundtrip():
    cert = certify_scan("code-2-4", 480)
    data = json.loads(json.dumps(cert.to_json()))
    assert verify_certificate(data)
    data["D"] += 1
    assert not verify_certificate(data)


def test_refuses_float_and_empty():
    inst = relation_instance("code-2-4", 240)
    with pytest.raises(CertificationError):
        certify(inst, 0.01)
    with pytest.raises(CertificationError):
        certify_scan("code-2-4", 240, [])


def test_unusable_grid_reports():
    with pytest.raises(UnusableT3) as exc:
        certify_scan("code-2-4", 2400, [Fraction(1, 10), Fraction(3, 20), Fraction(17, 100)])
    assert "unusable" in str(exc.value)


@pytest.mark.parametrize("tag,n", [("code-2-4", 24), ("code-2-4", 48), ("code-2-4", 96),
                                   ("code-3-3", 48), ("code-2-2", 40), ("code-4-2", 60)])
def test_sound_against_extremal(tag, n):
    cert = certify_scan(tag, n)
    inst = get_family(tag, n, 40)
    assert cert.d_bound >= extremal(inst, inst.m + 2).d_ext


def test_small_n_any_usable_t3():
    inst = relation_instance("code-2-4", 24)
    for t3 in [Fraction(1, 1000), Fraction(1, 100), Fraction(1, 20)]:
        try:
            assert certify(inst, t3).d_bound >= 8
        except UnusableT3:
            pass


def test_code_3_3_limit():
    cert = certify_scan("code-3-3", 1200)
    assert abs(cert.ratio - 0.2466929834) < 0.03


def test_ratio_non_increasing():
    ratios = [certify_scan("code-2-4", n).ratio for n in (600, 1200, 2400)]
    assert ratios[0] >= ratios[1] >= ratios[2]
