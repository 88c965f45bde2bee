"""Extremal enumerators: the unique c with [t^j](A - 1) = 0 for 1 <= j <= m."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .families import FamilyInstance, get_family, parse_family
from .quadratic import exact_sign
from .series import OrderError, TruncatedSeries


@dataclass
class ExtremalResult:
    family: str
    n: int
    m: int
    c: list
    A: TruncatedSeries
    valuation: int | None
    d_ext: int | None
    first_negative: tuple | None

    def row(self) -> dict:
        fn = None
        if self.first_negative is not None:
            fn = [self.first_negative[0], str(self.first_negative[1])]
        return {"n": self.n, "m": self.m, "d_ext": self.d_ext, "first_negative": fn}


def extremal(inst: FamilyInstance, order: int | None = None) -> ExtremalResult:
    """Triangular solve for the extremal enumerator.

    The term h f^(m-i) g^i starts at t^i with coefficient 1, so c_i is forced
    by cancelling [t^i] of the partial sum.  The reported distance is an
    enumerator-level bound: c * v(A - 1).
    """
    m = inst.m
    if order is None:
        order = inst.order
    if order <= m + 1:
        raise OrderError(f"order {order} must exceed m + 1 = {m + 1}")
    terms = [inst.basis_term(i, order) for i in range(m + 1)]
    cs = []
    acc = None
    for i, term in enumerate(terms):
        if i == 0:
            ci = Fraction(1)
        else:
            ci = -acc[i] / term[i]
        cs.append(ci)
        scaled = term.scale(ci)
        acc = scaled if acc is None else acc + scaled
    A = acc
    A_minus_1 = A - 1
    nu = A_minus_1.valuation()
    d = None if nu is None else inst.c * nu
    fneg = None
    stop = order if A.order is None else min(order, A.order)
    for j in range(stop):
        if exact_sign(A[j]) < 0:
            fneg = (j, A[j])
            break
    return ExtremalResult(inst.family.tag, inst.n, m, cs, A, nu, d, fneg)


def extremal_table(fid, n_list, order: int | None = None) -> list[ExtremalResult]:
    fid = parse_family(fid)
    rows = []
    for n in n_list:
        inst = get_family(fid, n, order or 64)
        o = order if order is not None else max(inst.m + 2, _natural_order(inst))
        rows.append(extremal(inst, o))
    return rows


def _natural_order(inst: FamilyInstance) -> int:
    """Degree + 1 of the enumerator for polynomial families (whole A scanned)."""
    try:
        deg = inst.h.degree + inst.m * max(inst.f.degree, inst.g.degree)
        return deg + 1
    except (OrderError, AttributeError):
        return inst.order
