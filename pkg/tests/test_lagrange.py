from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sdbounds.extremal import extremal
from sdbounds.families import get_family
from sdbounds.lagrange import (alpha_coefficients, alpha_pair, centered_power_poly,
                               centered_relation_vector, poly_relation_vector, ratio_fg,
                               relation_vector_pair, relation_vector_pair_laurent)
from sdbounds.series import OrderError

# (tag, step) pairs: admissible lengths are multiples of step
CASES = [("code-2-4", 8), ("code-2-2", 2), ("code-3-3", 4), ("code-4-2", 2),
         ("code-2-1", 1), ("code-3-1", 1), ("z4-type2", 8), ("lattice-1", 8)]
PAIR_TAGS = ["code-2-4", "code-2-2", "code-3-3", "code-4-2", "z4-type2"]

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=30)


def _instance(tag, step, mult, extra=6):
    probe = get_family(tag, step * mult, 8)
    return get_family(tag, step * mult, probe.m + extra)


@st.composite
def instances(draw):
    tag, step = draw(st.sampled_from(CASES))
    inst = _instance(tag, step, 1)
    mult = draw(st.integers(1, 60))
    inst = _instance(tag, step, mult, extra=10)
    if inst.m > 12:
        inst = _instance(tag, step, 1 + mult % 3, extra=10)
    cs = [Fraction(1)] + draw(st.lists(rationals, min_size=inst.m, max_size=inst.m))
    return inst, cs


@settings(max_examples=30)
@given(instances())
def test_roundtrip_and_vanishing(data):
    inst, cs = data
    m = inst.m
    A = inst.enumerator(cs, m + 6)
    for i in range(m + 5):
        rv = alpha_coefficients(inst, i, m + 5)
        want = cs[i] if i <= m else 0
        assert rv.apply(A) == want


def test_roundtrip_code_2_4_n48():
    inst = get_family("code-2-4", 48, 10)
    cs = [Fraction(1), Fraction(-7, 3), Fraction(11, 5)]
    A = inst.enumerator(cs, 10)
    assert [alpha_coefficients(inst, i, 9).apply(A) for i in range(3)] == cs


@pytest.mark.parametrize("tag,step", CASES)
def test_alpha_00(tag, step):
    inst = _instance(tag, step, 3)
    assert alpha_coefficients(inst, 0, 0).values == [1]


def test_extremal_satisfies_next_relation():
    inst = get_family("code-2-4", 24, 10)
    A = extremal(inst, 10).A
    assert alpha_coefficients(inst, 2, 9).apply(A) == 0


def test_order_guard():
    inst = get_family("code-2-4", 48, 3)
    with pytest.raises(OrderError):
        alpha_coefficients(inst, 5, 5)


@pytest.mark.parametrize("tag", PAIR_TAGS)
def test_pair_matches_definition_and_laurent(tag):
    step = dict(CASES)[tag]
    inst = _instance(tag, step, 9, extra=10)
    t3 = Fraction(1, 50)
    rv = relation_vector_pair(inst, t3)
    m = inst.m
    a1 = alpha_coefficients(inst, m + 1, m + 2).values
    a2 = alpha_coefficients(inst, m + 2, m + 2).values
    r = ratio_fg(inst, t3)
    assert rv.values == [x - r * y for x, y in zip(a2, a1)]
    assert relation_vector_pair_laurent(inst, t3).values == rv.values
    assert poly_relation_vector(inst, [-r, 1]).values == rv.values


def test_alpha_pair_matches_single_rows():
    inst = get_family("code-3-3", 60, 30)
    a1, a2 = alpha_pair(inst)
    m = inst.m
    assert a1 == alpha_coefficients(inst, m + 1, m + 2).values
    assert a2 == alpha_coefficients(inst, m + 2, m + 2).values


def test_constant_polynomial_is_alpha_row():
    inst = get_family("code-2-4", 240, 30)
    m = inst.m
    assert poly_relation_vector(inst, [1]).values == alpha_coefficients(inst, m + 1, m + 1).values


def test_worked_relation_at_240():
    inst = get_family("code-2-4", 240, 20)
    rv = relation_vector_pair(inst, Fraction(3, 20))
    assert rv.values[0] > 0
    assert rv[inst.m + 3] == 0 and len(rv) == inst.m + 3


def test_three_term_square():
    inst = get_family("code-2-4", 240, 30)
    m = inst.m
    x = ratio_fg(inst, Fraction(1, 5))
    rows = [alpha_coefficients(inst, m + 1 + i, m + 3).values for i in range(3)]
    coeffs = centered_power_poly(x, 2)
    manual = [sum(coeffs[i] * rows[i][j] for i in range(3)) for j in range(m + 4)]
    assert poly_relation_vector(inst, coeffs).values == manual
    assert centered_relation_vector(inst, 2).values == manual


def test_rejects_root_of_g():
    inst = get_family("code-2-4", 48, 10)
    with pytest.raises(ZeroDivisionError):
        relation_vector_pair(inst, Fraction(1))
