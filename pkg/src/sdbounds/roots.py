"""Certified real root isolation.

Polynomials here are plain lists of rationals, lowest degree first.  Roots
come back as :class:`RootInterval` objects with rational endpoints and,
when it can be proven, an exact value (rational or quadratic irrational).
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .quadratic import Quad, exact_sign, squarefree_decompose, to_mpf


@contextlib.contextmanager
def iv_workprec(prec: int):
    """mpmath.iv keeps its own precision; set it for the duration of a block."""
    old = mpmath.iv.prec
    mpmath.iv.prec = prec
    try:
        yield
    finally:
        mpmath.iv.prec = old


class RootError(ArithmeticError):
    pass


@dataclass(frozen=True)
class RootInterval:
    """A real root known to lie in [lo, hi]; ``exact`` set when proven."""

    lo: Fraction
    hi: Fraction
    exact: Fraction | Quad | None = None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self):
        if self.exact is not None:
            return to_mpf(self.exact)
        return (to_mpf(self.lo) + to_mpf(self.hi)) / 2

    def iv(self):
        """mpmath interval enclosing the root."""
        return mpmath.iv.mpf([_iv_lo(self.lo), _iv_hi(self.hi)])

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> dict:
        out = {"lo": str(self.lo), "hi": str(self.hi),
               "approx": mpmath.nstr(self.mid(), 30)}
        if self.exact is not None:
            out["exact"] = str(self.exact)
        return out


def _iv_lo(x: Fraction):
    return mpmath.iv.mpf(x.numerator) / x.denominator


def _iv_hi(x: Fraction):
    return mpmath.iv.mpf(x.numerator) / x.denominator


# -- dense rational polynomial helpers ------------------------------------

def trim(p: Sequence) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def deriv(p: Sequence) -> list:
    return [k * p[k] for k in range(1, len(p))]


def peval(p: Sequence, x):
    acc = Fraction(0) if not isinstance(x, (mpmath.mpf, mpmath.mpc)) else mpmath.mpf(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def pdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(x) for x in trim(a)]
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
        a = trim(a)
    return trim(q), a


def pgcd(a: Sequence, b: Sequence) -> list:
    a, b = trim(a), trim(b)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    return [Fraction(c) / a[-1] for c in a]


def squarefree(p: Sequence) -> list:
    g = pgcd(p, deriv(p))
    if len(g) <= 1:
        return trim(p)
    q, r = pdivmod(p, g)
    assert not r
    return q


def sturm_sequence(p: Sequence) -> list[list]:
    p0 = trim(p)
    seq = [p0, deriv(p0)]
    while trim(seq[-1]):
        _, r = pdivmod(seq[-2], seq[-1])
        r = [-c for c in r]
        if not r:
            break
        seq.append(r)
    return [s for s in seq if s]


def _sign_changes(seq: list[list], x) -> int:
    signs = []
    for s in seq:
        v = peval(s, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[list], lo, hi) -> int:
    """Number of distinct real roots in (lo, hi] (Sturm)."""
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def cauchy_bound(p: Sequence) -> Fraction:
    p = trim(p)
    lc = abs(Fraction(p[-1]))
    return 1 + max(abs(Fraction(c)) / lc for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_real_roots(p: Sequence, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (a, b] each holding exactly one real root of p."""
    p = squarefree([Fraction(c) for c in p])
    if len(p) <= 1:
        return []
    seq = sturm_sequence(p)
    B = cauchy_bound(p)
    lo = Fraction(-B) if lo is None else Fraction(lo)
    hi = Fraction(B) if hi is None else Fraction(hi)
    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = count_roots(seq, a, b)
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b))
        stack.append((a, m))
    out.sort()
    return out


def refine_by_sign(sign: Callable[[Fraction], int], lo: Fraction, hi: Fraction,
                   width: Fraction, max_steps: int = 100000) -> tuple[Fraction, Fraction]:
    """Bisect a bracket [lo, hi] with sign(lo) * sign(hi) < 0 down to ``width``.

    ``sign`` must be exact (certified); a zero sign at a midpoint ends the
    search with a degenerate interval.
    """
    slo, shi = sign(lo), sign(hi)
    if slo == 0:
        return lo, lo
    if shi == 0:
        return hi, hi
    if slo * shi > 0:
        raise RootError(f"no sign change on [{lo}, {hi}]")
    steps = 0
    while hi - lo > width:
        m = _dyadic_mid(lo, hi)
        sm = sign(m)
        if sm == 0:
            return m, m
        if sm == slo:
            lo = m
        else:
            hi = m
        steps += 1
        if steps > max_steps:
            raise RootError("bisection did not converge")
    return lo, hi


def _dyadic_mid(lo: Fraction, hi: Fraction) -> Fraction:
    return (lo + hi) / 2


def _try_rational(p: Sequence, lo: Fraction, hi: Fraction) -> Fraction | None:
    mid = (lo + hi) / 2
    for max_den in (1, 10, 100, 10**4, 10**6, 10**9):
        c = mid.limit_denominator(max_den)
        if lo <= c <= hi and peval(p, c) == 0:
            return c
    return None


def _try_quadratic(p: Sequence, lo: Fraction, hi: Fraction) -> Quad | None:
    """Recognize a root as a quadratic irrational and prove it by exact division."""
    with mpmath.workprec(256):
        x = (to_mpf(lo) + to_mpf(hi)) / 2
        tol = max(to_mpf(hi - lo) * 4, mpmath.mpf(2) ** -200)
        rel = mpmath.findpoly(x, 2, maxcoeff=10**8, tol=tol)
    if not rel or len(rel) != 3:
        return None
    A, B, C = (int(v) for v in rel)  # A x^2 + B x + C
    q = [Fraction(C), Fraction(B), Fraction(A)]
    _, r = pdivmod(p, q)
    if r:
        return None
    disc = B * B - 4 * A * C
    if disc <= 0:
        return None
    s, D = squarefree_decompose(disc)
    if D == 1:
        return None
    for sgn in (1, -1):
        root = Quad(Fraction(-B, 2 * A), Fraction(sgn * s, 2 * A), D)
        if lo <= root <= hi:
            return root
    return None


def isolate_root(p: Sequence, lo: Fraction, hi: Fraction, prec: int = 128,
                 recognize: bool = True) -> RootInterval:
    """Refine the unique root of p in (lo, hi] to width 2**-prec.

    The polynomial must change sign across the bracket (simple root).
    Rational and quadratic roots are recognized and proven exactly.
    """
    p = [Fraction(c) for c in trim(p)]

    def sign(x):
        return exact_sign(peval(p, x))

    if sign(hi) == 0:
        return RootInterval(hi, hi, hi)
    a, b = refine_by_sign(sign, lo, hi, Fraction(1, 2 ** 120))
    if a == b:
        return RootInterval(a, a, a)
    if recognize:
        r = _try_rational(p, a, b)
        if r is not None:
            return RootInterval(r, r, r)
        qd = _try_quadratic(p, a, b)
        if qd is not None:
            a, b = refine_by_sign(sign, a, b, Fraction(1, 2 ** prec))
            return RootInterval(a, b, qd)
    a, b = refine_by_sign(sign, a, b, Fraction(1, 2 ** prec))
    return RootInterval(a, b, None)


def smallest_positive_root(p: Sequence, prec: int = 128) -> RootInterval:
    p = squarefree([Fraction(c) for c in p])
    brackets = [ab for ab in isolate_real_roots(p, lo=0) if ab[1] > 0]
    if not brackets:
        raise RootError("no positive real root")
    a, b = brackets[0]
    a = max(a, Fraction(0))
    return isolate_root(p, a, b, prec)


def smallest_real_root(p: Sequence, prec: int = 128) -> RootInterval:
    p = squarefree([Fraction(c) for c in p])
    brackets = isolate_real_roots(p)
    if not brackets:
        raise RootError("no real root")
    a, b = brackets[0]
    return isolate_root(p, a, b, prec)
