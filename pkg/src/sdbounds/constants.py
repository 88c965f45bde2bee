"""Asymptotic constants t0, t1, t0', Lg(t0') and the scaled d/n bounds.

Polynomial families are handled with exact arithmetic: t0 is the smallest
positive root of g' (proven rational or quadratic when possible), and t1,
t0' are bracketed by bisection whose endpoint signs are computed exactly
(over Q or Q(sqrt D)).  Lattice families bisect E2^(N) on (0, 1) with a
rigorous truncation tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .eisenstein import (e2N_series, e2N_tail_bound, e2N_truncated_value, lattice_period,
                         level_weight)
from .families import FamilyError, FamilyId, FamilyInstance, get_family, parse_family
from .quadratic import Quad, exact_sign, to_mpf
from .roots import (RootError, RootInterval, iv_workprec, peval, refine_by_sign,
                    smallest_positive_root)
from .series import TruncatedSeries, derivative, eval_at

Z4_POLY = [-81, 0, 828, 0, -3718, 0, 9552, 0, -15218, 0, 15048, 0, -8525, 0, 2112, 0, 11]

REMARK_CODES = {
    "code-2-4": "0.1656298476",
    "code-3-3": "0.2466929834",
    "code-4-2": "0.3169872982",
    "code-2-2": "0.2113248655",
}
REMARK_LATTICES = {
    1: "0.0833210664", 2: "0.1246710056", 3: "0.1643714543", 5: "0.2351529896",
    6: "0.2414115212", 7: "0.2957105217", 11: "0.3973198712", 14: "0.4266498017",
    15: "0.3206725342", 23: "0.6262824896",
}
REMARK_Z4 = "0.3332625492"


@dataclass
class AsymptoticConstants:
    family: str
    t0: RootInterval
    t0_prime: RootInterval
    t1: RootInterval | None
    lg_t0_prime: mpmath.mpf
    lg_t0_prime_err: mpmath.mpf
    bound: mpmath.mpf
    bound_err: mpmath.mpf
    bound_exact: Fraction | Quad | None = None
    closed_form: dict | None = None
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def num(x):
            return mpmath.nstr(x, 25)
        out = {
            "family": self.family,
            "t0": self.t0.to_json(),
            "t0_prime": self.t0_prime.to_json(),
            "t1": None if self.t1 is None else self.t1.to_json(),
            "lg_t0_prime": num(self.lg_t0_prime),
            "lg_t0_prime_err": mpmath.nstr(self.lg_t0_prime_err, 5),
            "bound": num(self.bound),
            "bound_err": mpmath.nstr(self.bound_err, 5),
        }
        if self.bound_exact is not None:
            out["bound_exact"] = str(self.bound_exact)
        if self.closed_form is not None:
            out["closed_form"] = {k: (num(v) if isinstance(v, mpmath.mpf) else v)
                                  for k, v in self.closed_form.items()}
        out["checks"] = {k: (num(v) if isinstance(v, mpmath.mpf) else v)
                         for k, v in self.checks.items()}
        return out


@dataclass(frozen=True)
class EisensteinSeries:
    """E2^(N) = sum_{d|N} d E2(q^d) with E2 = 1/24 - sum sigma(m) q^m, truncated after q^M.

    Sign convention: this E2 is -1/24 times the usual 1 - 24 sum sigma(m) q^m.
    """

    N: int
    M: int

    @property
    def series(self) -> TruncatedSeries:
        return e2N_series(self.N, self.M + 1)

    @property
    def constant_term(self) -> Fraction:
        return Fraction(level_weight(self.N), 24)

    def tail_bound(self, t: Fraction) -> Fraction:
        return e2N_tail_bound(self.N, self.M, t)

    def truncated_value(self, t: Fraction) -> Fraction:
        return e2N_truncated_value(self.N, self.M, t)


# -- helpers for exact polynomial bases ------------------------------------

def _coeff_list(s: TruncatedSeries) -> list:
    if s.order is not None or s.lead < 0:
        raise FamilyError("expected an exact polynomial")
    return [s[j] for j in range(0, s.degree + 1)]


def _is_polynomial_family(inst: FamilyInstance) -> bool:
    return inst.g.order is None and (inst.f is None or inst.f.order is None)


def lg_value(inst: FamilyInstance, t):
    """Lg(t) = t g'(t)/g(t); exact for polynomial g and exact t."""
    g = inst.g
    return t * eval_at(derivative(g), t) / eval_at(g, t)


# -- t0 ------------------------------------------------------------------

def find_t0(inst: FamilyInstance, prec: int = 128) -> RootInterval:
    """Smallest positive zero of Lg = t g'/g."""
    if inst.family.kind == "lattice":
        return lattice_t0(inst.family.N, prec)
    gp = _coeff_list(derivative(inst.g))
    if any(isinstance(c, Quad) for c in gp):
        raise FamilyError("g with quadratic-field coefficients is not supported")
    return smallest_positive_root(gp, prec)


def _lattice_sign(N: int, t: Fraction, M: int) -> tuple[int, int]:
    """Certified sign of E2^(N)(t); grows M when the tail swamps the value."""
    while True:
        v = e2N_truncated_value(N, M, t)
        if v < 0:  # every omitted term is negative
            return -1, M
        tail = e2N_tail_bound(N, M, t)
        if v - tail > 0:
            return 1, M
        if M > 12800:
            raise RootError(f"cannot certify the sign of E2^({N}) at {t}")
        M *= 2


def lattice_t0(N: int, prec: int = 128, M: int = 400) -> RootInterval:
    """Zero of E2^(N)(q) on (0, 1): q0 = exp(2 pi i z0)."""
    state = {"M": M}

    def sign(t):
        if t == 0:
            return 1
        s, state["M"] = _lattice_sign(N, t, state["M"])
        return s

    hi = Fraction(1, 2)
    while sign(hi) > 0:
        hi = (hi + 1) / 2
        if hi > Fraction(1023, 1024):
            raise RootError(f"no sign change of E2^({N}) below q = 1 - 2^-10")
    lo, hi = refine_by_sign(sign, Fraction(0), hi, Fraction(1, 2 ** prec))
    return RootInterval(lo, hi, lo if lo == hi else None)


# -- t1 and t0' for polynomial bases ---------------------------------------

def _rational_below(t0: RootInterval) -> Fraction:
    return t0.lo if t0.exact is None or not isinstance(t0.exact, Fraction) else t0.exact


def find_t1(inst: FamilyInstance, t0: RootInterval | None = None, prec: int = 128) -> RootInterval:
    """Local minimum of f/g on (0, t0): sign change of f'g - f g'."""
    if t0 is None:
        t0 = find_t0(inst, prec)
    f, g = inst.f, inst.g
    df, dg = derivative(f), derivative(g)

    def sign(t):
        return exact_sign(eval_at(df, t) * eval_at(g, t) - eval_at(f, t) * eval_at(dg, t))

    hi = _rational_below(t0)
    if sign(hi) <= 0:
        raise RootError("f'g - fg' not positive just below t0")
    lo, hi = refine_by_sign(sign, Fraction(0), hi, Fraction(1, 2 ** prec))
    return RootInterval(lo, hi, lo if lo == hi else None)


def find_t0_prime(inst: FamilyInstance, prec: int = 128, t0: RootInterval | None = None,
                  t1: RootInterval | None = None) -> RootInterval:
    """Unique t in (0, t1) with f(t)/g(t) = f(t0)/g(t0)."""
    if inst.family.kind == "lattice":
        return _lattice_t0_prime(inst.family.N, prec)
    if t0 is None:
        t0 = find_t0(inst, prec)
    if t1 is None:
        t1 = find_t1(inst, t0, prec)
    if t0.exact is None:
        raise RootError("t0 is not exact; t0' would not be certified")
    x0 = t0.exact
    R = eval_at(inst.f, x0) / eval_at(inst.g, x0)
    f, g = inst.f, inst.g

    def value(t):
        return eval_at(f, t) - R * eval_at(g, t)

    def sign(t):
        return exact_sign(value(t))

    lo, hi = refine_by_sign(sign, Fraction(0), t1.lo, Fraction(1, 2 ** 60))
    if lo == hi:
        return RootInterval(lo, lo, lo)
    mid = (lo + hi) / 2
    for max_den in (1, 10, 100, 10**4, 10**6, 10**9):
        c = mid.limit_denominator(max_den)
        if lo <= c <= hi and not value(c):
            return RootInterval(c, c, c)
    lo, hi = refine_by_sign(sign, lo, hi, Fraction(1, 2 ** prec))
    return RootInterval(lo, hi, lo if lo == hi else None)


def _interval_from_iv(x) -> RootInterval:
    return RootInterval(_mpf_to_fraction(x.a), _mpf_to_fraction(x.b), None)


def _mpf_to_fraction(x) -> Fraction:
    man, exp = mpmath.mpf(x).man_exp
    return Fraction(int(man)) * (Fraction(2) ** int(exp))


def _lattice_t0_prime(N: int, prec: int) -> RootInterval:
    t0 = lattice_t0(N, prec)
    with iv_workprec(prec + 20):
        y0 = -mpmath.iv.log(t0.iv()) / (2 * mpmath.iv.pi)
        tp = mpmath.iv.exp(-2 * mpmath.iv.pi / (N * y0))
        return _interval_from_iv(tp)


# -- the bound ------------------------------------------------------------

def closed_form_code(q: int, c: int) -> dict:
    """Values from the MacWilliams functional equation for g = t(1-t)^c."""
    s = (mpmath.mpf(c) + 1) ** (-mpmath.mpf(1) / c)
    t0 = mpmath.mpf(1) / (c + 1)
    return {
        "t0_prime": ((1 - s) / (1 + (q - 1) * s)) ** c,
        "bound": mpmath.mpf(q - 1) / q * (1 - s),
        "expression": f"({q}-1)/{q} * (1 - {c + 1}^(-1/{c}))",
        "t0": t0,
    }


def asymptotic_bound(fid, prec: int = 128) -> AsymptoticConstants:
    """Scaled limit of d/n (or mu/dim) for a family, with certified enclosures."""
    fid = parse_family(fid)
    with mpmath.workprec(prec + 32):
        if fid.kind == "lattice":
            return _lattice_constants(fid.N, prec)
        if fid.kind == "z4-general":
            out = _polynomial_constants(get_family("z4-type2", 24), prec)
            out.family = fid.tag
            out.checks["note"] = "constant shared with the Type II pipeline"
            return out
        if fid.kind == "fsd-binary-shadow":
            out = _polynomial_constants(get_family("code-2-2", 8), prec)
            out.family = fid.tag
            out.checks["note"] = "constant of the singly-even formally self-dual pipeline"
            return out
        if fid.kind == "binary-sd-shadow":
            return _shadow_binary_constants(prec)
        n = {"code": 24 * 12, "quantum": 25, "z4-type2": 24}[fid.kind]
        if fid.kind == "code":
            inst0 = get_family(fid, 2 * 3 * 4 * 24 if fid.c != 1 else 24)
        else:
            inst0 = get_family(fid, n)
        return _polynomial_constants(inst0, prec)


def _polynomial_constants(inst: FamilyInstance, prec: int) -> AsymptoticConstants:
    t0 = find_t0(inst, prec)
    t1 = find_t1(inst, t0, prec)
    tp = find_t0_prime(inst, prec, t0, t1)
    scale = Fraction(inst.c, inst.n0)
    checks = {}
    if tp.exact is not None:
        lg_exact = lg_value(inst, tp.exact)
        bound_exact = lg_exact * scale
        lg_mid, lg_err = to_mpf(lg_exact), mpmath.mpf(0)
        b_mid, b_err = to_mpf(bound_exact), mpmath.mpf(0)
    else:
        # Lg is decreasing on (0, t0): exact rational enclosure
        lg_hi, lg_lo = lg_value(inst, tp.lo), lg_value(inst, tp.hi)
        lg_mid = (to_mpf(lg_hi) + to_mpf(lg_lo)) / 2
        lg_err = (to_mpf(lg_hi) - to_mpf(lg_lo)) / 2
        b_mid, b_err = lg_mid * to_mpf(scale), lg_err * to_mpf(scale)
        bound_exact = None
    checks["ordering_ok"] = bool(tp.hi < t1.lo and t1.hi < _rational_below(t0))
    closed = None
    if inst.closed_form is not None:
        cf = inst.closed_form
        closed = closed_form_code(cf["q"], cf["c"])
        tol = mpmath.mpf(2) ** (-prec // 2)
        checks["closed_form_diff"] = abs(closed["bound"] - b_mid)
        checks["closed_form_agrees"] = bool(checks["closed_form_diff"] <= tol + b_err)
        lo, hi = to_mpf(tp.lo), to_mpf(tp.hi)
        checks["closed_t0_prime_in_interval"] = bool(lo - tol <= closed["t0_prime"] <= hi + tol)
    if inst.family.kind == "quantum":
        q = inst.family.q
        qc = Fraction(1, 2) * (1 - Fraction(1, q * q))
        closed = {"bound": to_mpf(qc), "expression": f"(1 - 1/{q}^2)/2", "exact": str(qc)}
        checks["closed_form_agrees"] = bound_exact == qc
    return AsymptoticConstants(inst.family.tag, t0, tp, t1, lg_mid, lg_err, b_mid, b_err,
                               bound_exact, closed, checks)


def _shadow_binary_constants(prec: int) -> AsymptoticConstants:
    """Self-dual binary codes: the shadow argument with t0 = 5^(-1/2)."""
    inst = get_family("binary-sd-shadow", 8)
    t0q = Quad(0, Fraction(1, 5), 5)  # 5^(-1/2)
    K = (1 + t0q) ** 4 / (t0q * (1 - t0q) ** 2)
    f, g = inst.f, inst.g

    def sign(t):
        return exact_sign(eval_at(f, t) - K * eval_at(g, t))

    t1 = find_t1(inst, None, prec)
    lo, hi = refine_by_sign(sign, Fraction(0), t1.lo, Fraction(1, 2 ** prec))
    tp = RootInterval(lo, hi, None)
    s = mpmath.mpf(5) ** (-mpmath.mpf(1) / 4)
    closed_tp = ((1 - s) / (1 + s)) ** 2
    bound = (1 - s) / 2
    tol = mpmath.mpf(2) ** (-prec // 2)
    t0 = RootInterval(Fraction(0), Fraction(1), t0q)
    checks = {"closed_t0_prime_in_interval": bool(to_mpf(lo) - tol <= closed_tp <= to_mpf(hi) + tol),
              "note": "bound taken from the shadow argument, not the Lg(t0') c/n0 scaling"}
    return AsymptoticConstants("binary-sd-shadow", t0, tp, t1, mpmath.mpf("nan"), mpmath.mpf(0),
                               bound, mpmath.mpf(0), None,
                               {"bound": bound, "expression": "(1 - 5^(-1/4))/2"}, checks)


def _lattice_constants(N: int, prec: int) -> AsymptoticConstants:
    t0 = lattice_t0(N, prec)
    with iv_workprec(prec + 20):
        return _lattice_constants_iv(N, t0)


def _lattice_constants_iv(N: int, t0: RootInterval) -> AsymptoticConstants:
    x = t0.iv()
    y0 = -mpmath.iv.log(x) / (2 * mpmath.iv.pi)
    bound = N * y0 / (2 * mpmath.iv.pi)
    tp_iv = mpmath.iv.exp(-2 * mpmath.iv.pi / (N * y0))
    tp = _interval_from_iv(tp_iv)
    n0 = lattice_period(N)
    lg_tp = y0 * N * n0 / (4 * mpmath.iv.pi)
    b_mid = (mpmath.mpf(bound.a) + mpmath.mpf(bound.b)) / 2
    b_err = (mpmath.mpf(bound.b) - mpmath.mpf(bound.a)) / 2
    lg_mid = (mpmath.mpf(lg_tp.a) + mpmath.mpf(lg_tp.b)) / 2
    lg_err = (mpmath.mpf(lg_tp.b) - mpmath.mpf(lg_tp.a)) / 2
    # independent check of the transformation law: evaluate the q-series at t0'
    E = e2N_series(N, 60)
    direct = to_mpf(Fraction(24, level_weight(N))) * eval_at(E, (to_mpf(tp.lo) + to_mpf(tp.hi)) / 2)
    checks = {"lg_t0_prime_series": direct, "lg_t0_prime_series_diff": abs(direct - lg_mid),
              "y0": (mpmath.mpf(y0.a) + mpmath.mpf(y0.b)) / 2, "n0": n0}
    return AsymptoticConstants(f"lattice-{N}", t0, tp, None, lg_mid, lg_err, b_mid, b_err,
                               None, {"expression": f"{N} * y0 / (2 pi), z0 = i y0"}, checks)


def z4_polynomial_check(prec: int = 128) -> dict:
    """Evaluate the degree-16 polynomial at x = 1 - bound/2 from the Z4 pipeline."""
    with mpmath.workprec(prec):
        ac = asymptotic_bound("z4-type2", prec)
        x = 1 - ac.bound / 2
        residual = peval([mpmath.mpf(c) for c in Z4_POLY], x)
        t0 = ac.t0
        t0_closed = (2 * mpmath.sqrt(5) - 3) / 11
        return {
            "x": x,
            "bound": ac.bound,
            "bound_err": ac.bound_err,
            "residual": residual,
            "t0_exact": str(t0.exact),
            "t0_closed_form_diff": abs(to_mpf(t0.exact) - t0_closed) if t0.exact is not None
            else abs(t0.mid() - t0_closed),
            "t0_in_interval": bool(to_mpf(t0.lo) <= t0_closed <= to_mpf(t0.hi)),
            "poly_at_zero": Z4_POLY[0],
        }


def constants_table(prec: int = 128) -> list[AsymptoticConstants]:
    from .families import registered_families
    return [asymptotic_bound(fid, prec) for fid in registered_families()]
