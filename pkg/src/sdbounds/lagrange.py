"""Linear relations between enumerator coefficients via Burmann-Lagrange.

If sum_j a_j t^j = h(t) sum_i c_i f(t)^(m-i) g(t)^i then c_i = sum_j alpha_ij a_j
with

    alpha_ij = [t^(i-j)] h^-1 f^(i-m) gt^-i (Lg - Lf),

gt = g/t and L the operator t d/dt log.  For i > m the functional vanishes on
every admissible enumerator; those are the relations exploited here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .families import FamilyError, FamilyInstance
from .quadratic import DomainError, Quad, to_mpf
from .series import (OrderError, TruncatedSeries, derivative, eval_at, log_derivative,
                     series_add, series_mul, series_pow, series_reciprocal, theta)


@dataclass
class RelationVector:
    family: str
    n: int
    m: int
    values: list
    meta: dict = field(default_factory=dict)

    def __getitem__(self, j):
        return self.values[j] if 0 <= j < len(self.values) else Fraction(0)

    def __len__(self):
        return len(self.values)

    def apply(self, A: TruncatedSeries):
        """sum_j values[j] * [t^j] A."""
        acc = Fraction(0)
        for j, v in enumerate(self.values):
            if v:
                acc = acc + v * A[j]
        return acc

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "m": self.m,
                "meta": {k: _coef_json(v) for k, v in self.meta.items()},
                "values": [_coef_json(v) for v in self.values]}


def _coef_json(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    if isinstance(v, Quad):
        return {"a": str(v.a), "b": str(v.b), "D": v.D}
    if isinstance(v, (mpmath.mpf,)):
        return mpmath.nstr(v, mpmath.mp.dps)
    return v


def _require_f(inst: FamilyInstance):
    if inst.f is None or inst.h is None:
        raise FamilyError(f"{inst.family} exposes only Lg data; no relation vectors")


def _trunc(s: TruncatedSeries, order: int) -> TruncatedSeries:
    if s.order is not None and s.order < order:
        raise OrderError(f"series known to order {s.order}, need {order}")
    return s.truncate(order)


def _kernel(inst: FamilyInstance, order: int) -> TruncatedSeries:
    """h^-1 (Lg - Lf) to the given order."""
    Lg = log_derivative(inst.g, order=order if inst.g.order is None else None)
    Lf = log_derivative(inst.f, order=order if inst.f.order is None else None)
    hinv = series_reciprocal(inst.h, order=order if inst.h.order is None else None)
    return _trunc(series_mul(_trunc(hinv, order), _trunc(series_add(Lg, -Lf), order)), order)


def _check_order(inst: FamilyInstance, need: int):
    if inst.order < need:
        raise OrderError(f"order {inst.order} too small: need at least {need}")
    for s in (inst.f, inst.g, inst.h):
        if s is not None and s.order is not None and s.order - 2 < need:
            raise OrderError(f"basis series known to order {s.order}, need {need + 2}")


def _gt_power(inst: FamilyInstance, e: int, order: int) -> TruncatedSeries:
    gt = inst.g_tilde
    return _trunc(series_pow(gt, e, order=order if gt.order is None else None), order)


def _f_power(inst: FamilyInstance, e: int, order: int) -> TruncatedSeries:
    if e >= 0:
        p = series_pow(inst.f, e)
    else:
        p = series_pow(inst.f, e, order=order if inst.f.order is None else None)
    return _trunc(p, order)


def bl_series(inst: FamilyInstance, i: int) -> TruncatedSeries:
    """P_i = h^-1 f^(i-m) gt^-i (Lg - Lf) to order i+1, so alpha_ij = [t^(i-j)] P_i."""
    _require_f(inst)
    if i < 0:
        raise ValueError("i must be nonnegative")
    need = i + 1
    _check_order(inst, need)
    K = _kernel(inst, need)
    P = series_mul(series_mul(K, _f_power(inst, i - inst.m, need)), _gt_power(inst, -i, need))
    return _trunc(P, need)


def alpha_coefficients(inst: FamilyInstance, i: int, jmax: int) -> RelationVector:
    """alpha_ij for j = 0..jmax (zero for j > i)."""
    P = bl_series(inst, i)
    vals = [P[i - j] if j <= i else Fraction(0) for j in range(jmax + 1)]
    return RelationVector(inst.family.tag, inst.n, inst.m, vals, {"i": i})


def alpha_pair(inst: FamilyInstance) -> tuple[list, list]:
    """(alpha_{m+1, j}, alpha_{m+2, j}) for j = 0..m+2 from one shared expansion."""
    _require_f(inst)
    m = inst.m
    need = m + 3
    _check_order(inst, need)
    K = _kernel(inst, need)
    P1 = _trunc(series_mul(series_mul(K, _trunc(inst.f, need) if inst.f.order is not None
                                      else inst.f), _gt_power(inst, -(m + 1), need)), need)
    gti = _gt_power(inst, -1, need)
    P2 = _trunc(series_mul(series_mul(P1, inst.f if inst.f.order is None
                                      else _trunc(inst.f, need)), gti), need)
    a1 = [P1[m + 1 - j] if j <= m + 1 else Fraction(0) for j in range(m + 3)]
    a2 = [P2[m + 2 - j] for j in range(m + 3)]
    return a1, a2


def ratio_fg(inst: FamilyInstance, t):
    """f(t)/g(t) at a point (exact for exact bases and exact t)."""
    _require_f(inst)
    gt = eval_at(inst.g, t)
    if not gt:
        raise ZeroDivisionError("t is a root of g")
    return eval_at(inst.f, t) / gt


def relation_vector_pair(inst: FamilyInstance, t3) -> RelationVector:
    """Coefficients of c_{m+2} - (f(t3)/g(t3)) c_{m+1} on [t^j]A, j = 0..m+2."""
    r = ratio_fg(inst, t3)
    a1, a2 = alpha_pair(inst)
    vals = [x - r * y for x, y in zip(a2, a1)]
    return RelationVector(inst.family.tag, inst.n, inst.m, vals, {"t3": t3, "ratio": r})


def _fg_series(inst: FamilyInstance, order: int) -> TruncatedSeries:
    """f/g as a Laurent series (lead -1) known to ``order``."""
    ginv = series_reciprocal(inst.g, order=order if inst.g.order is None else None)
    f = inst.f if inst.f.order is None else inst.f
    s = series_mul(f, ginv)
    return _trunc(s, order)


def relation_vector_pair_laurent(inst: FamilyInstance, t3) -> RelationVector:
    """Same relation via -[t^(m+2-j)] t^3 h^-1 (f/g - r) (f/g)' gt^-m."""
    _require_f(inst)
    m = inst.m
    need = m + 6
    _check_order(inst, need)
    r = ratio_fg(inst, t3)
    fg = _fg_series(inst, need)
    dfg = derivative(fg)
    hinv = _trunc(series_reciprocal(inst.h, order=need if inst.h.order is None else None), need)
    prod = series_mul(series_mul(series_mul(hinv, series_add(fg, TruncatedSeries(0, (-r,), None))),
                                 dfg), _gt_power(inst, -m, need))
    prod = prod.shift(3)
    vals = [-prod[m + 2 - j] for j in range(m + 3)]
    return RelationVector(inst.family.tag, inst.n, m, vals, {"t3": t3, "ratio": r})


def poly_relation_vector(inst: FamilyInstance, p: Sequence) -> RelationVector:
    """Relation sum_k p_k c_{m+1+k} expressed on [t^j]A.

    values[j] = -[t^(m-j)] h^-1 p(f/g) t (f/g)' gt^-m, j = 0..m+deg(p)+1.
    ``p`` lists polynomial coefficients, constant term first.
    """
    _require_f(inst)
    p = list(p)
    while p and not p[-1]:
        p.pop()
    if not p:
        raise ValueError("zero polynomial")
    deg = len(p) - 1
    m = inst.m
    need = m + 2 * deg + 6
    _check_order(inst, need)
    fg = _fg_series(inst, need)
    tdfg = theta(fg)
    # Horner evaluation of p at the Laurent series f/g
    acc = TruncatedSeries(0, (p[-1],), None)
    for c in reversed(p[:-1]):
        acc = series_add(series_mul(acc, fg), TruncatedSeries(0, (c,), None))
    hinv = _trunc(series_reciprocal(inst.h, order=need if inst.h.order is None else None), need)
    prod = series_mul(series_mul(series_mul(hinv, acc), tdfg), _gt_power(inst, -m, need))
    if prod.order is not None and prod.order <= m:
        raise OrderError("internal truncation too small for polynomial relation")
    vals = [-prod[m - j] for j in range(m + deg + 2)]
    return RelationVector(inst.family.tag, inst.n, m, vals, {"p": tuple(p)})


def centered_power_poly(center, k: int) -> list:
    """Coefficients of (x - center)^k, constant term first."""
    from math import comb
    return [comb(k, i) * (-center) ** (k - i) for i in range(k + 1)]


def centered_relation_vector(inst: FamilyInstance, k: int, center=None,
                             allow_float: bool = False) -> RelationVector:
    """The relation for p(x) = (x - f(t0)/g(t0))^k.

    The center must be exact (rational or quadratic) unless ``allow_float``.
    """
    if center is None:
        from .constants import find_t0
        t0 = find_t0(inst)
        if t0.exact is not None:
            center = ratio_fg(inst, t0.exact)
        elif allow_float:
            center = ratio_fg(inst, t0.mid())
        else:
            raise DomainError(
                f"f(t0)/g(t0) is not exact for {inst.family}; pass allow_float=True "
                "or an exact center")
    elif isinstance(center, mpmath.mpf) and not allow_float:
        raise DomainError("floating-point center refused without allow_float=True")
    rv = poly_relation_vector(inst, centered_power_poly(center, k))
    rv.meta.update({"k": k, "center": center})
    return rv
