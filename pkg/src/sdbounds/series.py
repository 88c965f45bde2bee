"""Truncated Laurent series over exact (or big-float) coefficient domains.

A series stores the coefficients of t**lead, t**(lead+1), ... and an
explicit truncation ``order``: coefficients of t**j for j >= order are
unknown.  ``order=None`` marks an exact finite Laurent polynomial.

Every operation propagates the tightest valid order, so results never
silently claim more precision than their inputs carry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .quadratic import DomainError, Quad, exact_sign, to_mpf

__all__ = [
    "DomainError",
    "OrderError",
    "TruncatedSeries",
    "series",
    "poly",
    "monomial",
    "series_add",
    "series_sub",
    "series_mul",
    "series_reciprocal",
    "series_pow",
    "log_derivative",
    "derivative",
    "theta",
    "eval_at",
    "domain_of",
]


class OrderError(ValueError):
    """The truncation order of an input is too small for the request."""


def _norm(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, float):
        return mpmath.mpf(c)
    return c


def domain_of(coeffs: Iterable) -> str:
    """'QQ', 'QQ(sqrt D)' or 'RR'; raises DomainError on mixed quadratic fields."""
    D = None
    real = False
    for c in coeffs:
        if isinstance(c, Quad):
            if D is not None and c.D != D:
                raise DomainError(f"mixed quadratic fields sqrt({D}) and sqrt({c.D})")
            D = c.D
        elif isinstance(c, (mpmath.mpf, mpmath.mpc)):
            real = True
    if real:
        return "RR"
    if D is not None:
        return f"QQ(sqrt {D})"
    return "QQ"


def _add_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class TruncatedSeries:
    lead: int
    coeffs: tuple
    order: int | None = None

    def __post_init__(self):
        coeffs = tuple(_norm(c) for c in self.coeffs)
        if self.order is None:
            # strip trailing zeros of exact polynomials
            k = len(coeffs)
            while k > 0 and not coeffs[k - 1]:
                k -= 1
            coeffs = coeffs[:k]
        else:
            if self.lead >= self.order:
                raise OrderError(f"lead {self.lead} must be below order {self.order}")
            n = self.order - self.lead
            coeffs = coeffs[:n] + (Fraction(0),) * (n - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    # -- basic queries -------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def domain(self) -> str:
        return domain_of(self.coeffs)

    def valuation(self) -> int | None:
        """Smallest j with nonzero coefficient; None if zero up to order."""
        for k, c in enumerate(self.coeffs):
            if c:
                return self.lead + k
        return None

    def _val_or_order(self):
        v = self.valuation()
        if v is None:
            return self.order if self.order is not None else math.inf
        return v

    def __getitem__(self, j: int):
        if self.order is not None and j >= self.order:
            raise OrderError(f"coefficient t^{j} is beyond truncation order {self.order}")
        k = j - self.lead
        if k < 0 or k >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[k]

    def coefficients(self, start: int, stop: int) -> list:
        return [self[j] for j in range(start, stop)]

    @property
    def degree(self) -> int:
        if self.order is not None:
            raise OrderError("degree is only defined for exact polynomials")
        return self.lead + len(self.coeffs) - 1

    def truncate(self, order: int) -> "TruncatedSeries":
        if self.order is not None and order > self.order:
            raise OrderError(f"cannot raise order {self.order} to {order}")
        lead = min(self.lead, order - 1)
        return TruncatedSeries(lead, tuple(self[j] for j in range(lead, order)), order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t**k."""
        return TruncatedSeries(self.lead + k, self.coeffs,
                               None if self.order is None else self.order + k)

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.lead, tuple(fn(c) for c in self.coeffs), self.order)

    def scale(self, x) -> "TruncatedSeries":
        return self.map(lambda c: c * x)

    def first_negative(self, upto: int | None = None):
        """(index, value) of the first negative coefficient below ``upto``, else None."""
        stop = upto if upto is not None else (self.order if self.order is not None
                                              else self.lead + len(self.coeffs))
        if self.order is not None and stop > self.order:
            raise OrderError(f"positivity requested up to {stop} but order is {self.order}")
        for j in range(self.lead, stop):
            c = self[j]
            if exact_sign(c) < 0:
                return j, c
        return None

    def is_nonnegative(self, upto: int | None = None) -> bool:
        return self.first_negative(upto) is None

    # -- operators ----------------------------------------------------
    def __add__(self, other):
        return series_add(self, _as_series(other))

    def __radd__(self, other):
        return series_add(_as_series(other), self)

    def __sub__(self, other):
        return series_sub(self, _as_series(other))

    def __rsub__(self, other):
        return series_sub(_as_series(other), self)

    def __neg__(self):
        return self.map(lambda c: -c)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return self.scale(_norm(other))

    def __rmul__(self, other):
        return self.scale(_norm(other))

    def __pow__(self, e: int):
        return series_pow(self, e)

    def __call__(self, x):
        return eval_at(self, x)

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs[:8])
        more = ", ..." if len(self.coeffs) > 8 else ""
        return f"TruncatedSeries(lead={self.lead}, order={self.order}, [{terms}{more}])"

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        dom = self.domain
        out = {"lead": self.lead, "order": self.order, "domain": dom}
        if dom == "QQ":
            out["coeffs"] = [_frac_str(c) for c in self.coeffs]
        elif dom.startswith("QQ(sqrt"):
            out["coeffs"] = [
                [_frac_str(c.a), _frac_str(c.b)] if isinstance(c, Quad)
                else [_frac_str(c), "0"] for c in self.coeffs]
        else:
            out["coeffs"] = [mpmath.nstr(to_mpf(c), mpmath.mp.dps) for c in self.coeffs]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "TruncatedSeries":
        dom = obj["domain"]
        if dom == "QQ":
            coeffs = [Fraction(c) for c in obj["coeffs"]]
        elif dom.startswith("QQ(sqrt"):
            D = int(dom[len("QQ(sqrt "):-1])
            coeffs = [Quad(Fraction(a), Fraction(b), D) for a, b in obj["coeffs"]]
        else:
            coeffs = [mpmath.mpf(c) for c in obj["coeffs"]]
        return cls(obj["lead"], tuple(coeffs), obj["order"])


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _as_series(x) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries(0, (_norm(x),), None)


# -- constructors ------------------------------------------------------

def series(coeffs: Sequence, lead: int = 0, order: int | None = None) -> TruncatedSeries:
    return TruncatedSeries(lead, tuple(coeffs), order)


def poly(coeffs: Sequence, lead: int = 0) -> TruncatedSeries:
    """Exact polynomial sum(coeffs[k] * t**(lead+k))."""
    return TruncatedSeries(lead, tuple(coeffs), None)


def monomial(k: int, c=1) -> TruncatedSeries:
    return TruncatedSeries(k, (c,), None)


# -- arithmetic ----------------------------------------------------------

def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    order = _add_order(a.order, b.order)
    lead = min(a.lead, b.lead)
    if order is None:
        stop = max(a.lead + len(a.coeffs), b.lead + len(b.coeffs))
    else:
        lead = min(lead, order - 1)
        stop = order
    return TruncatedSeries(lead, tuple(a[j] + b[j] if (a.order is None or j < a.order) and
                                       (b.order is None or j < b.order) else 0
                                       for j in range(lead, stop)), order)


def series_sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return series_add(a, -b)


def _all_rational(xs) -> bool:
    return all(type(x) is Fraction for x in xs)


def _to_int_scaled(xs):
    den = 1
    for x in xs:
        d = x.denominator
        if d != 1:
            den = den * d // math.gcd(den, d)
    return [x.numerator * (den // x.denominator) for x in xs], den


def _convolve(a: Sequence, b: Sequence, n: int) -> list:
    """First n coefficients of the Cauchy product of coefficient lists a, b."""
    la, lb = len(a), len(b)
    if n <= 0 or la == 0 or lb == 0:
        return [Fraction(0)] * max(n, 0)
    if _all_rational(a) and _all_rational(b):
        A, da = _to_int_scaled(a[:n])
        B, db = _to_int_scaled(b[:n])
        out = []
        den = da * db
        for k in range(n):
            lo = max(0, k - len(B) + 1)
            hi = min(k, len(A) - 1)
            s = 0
            for i in range(lo, hi + 1):
                s += A[i] * B[k - i]
            out.append(Fraction(s, den))
        return out
    out = []
    for k in range(n):
        lo = max(0, k - lb + 1)
        hi = min(k, la - 1)
        s = Fraction(0)
        for i in range(lo, hi + 1):
            s = s + a[i] * b[k - i]
        out.append(s)
    return out


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product; order = min(a.order + v(b), b.order + v(a))."""
    domain_of(a.coeffs + b.coeffs)
    if (a.order is None and not a.coeffs) or (b.order is None and not b.coeffs):
        return TruncatedSeries(0, (), None)  # an exact zero annihilates
    lead = a.lead + b.lead
    if a.order is None and b.order is None:
        n = len(a.coeffs) + len(b.coeffs) - 1
        return TruncatedSeries(lead, tuple(_convolve(a.coeffs, b.coeffs, n)), None)
    va, vb = a._val_or_order(), b._val_or_order()
    cand = []
    if a.order is not None:
        cand.append(a.order + vb)
    if b.order is not None:
        cand.append(b.order + va)
    order = min(cand)
    if order == math.inf:
        raise OrderError("product of two zero series has no finite order")
    order = int(order)
    if lead >= order:
        # product is zero to its known precision
        return TruncatedSeries(order - 1, (), order)
    n = order - lead
    return TruncatedSeries(lead, tuple(_convolve(a.coeffs, b.coeffs, n)), order)


def _split_unit(a: TruncatedSeries):
    """Write a = t**v * u with u(0) != 0; returns (v, coefficient list of u, rel_prec)."""
    v = a.valuation()
    if v is None:
        raise DomainError("series is identically zero (to its known order)")
    u = list(a.coeffs[v - a.lead:])
    rel = None if a.order is None else a.order - v
    return v, u, rel


def _inverse_unit(u: Sequence, n: int) -> list:
    """First n coefficients of 1/u for a coefficient list with u[0] != 0."""
    d = len(u) - 1
    if _all_rational(u):
        U, den = _to_int_scaled(u)
        u0 = U[0]
        if u0 in (1, -1):
            b = [0] * n
            for k in range(n):
                s = den if k == 0 else 0
                for j in range(1, min(k, d) + 1):
                    s -= U[j] * b[k - j]
                b[k] = s * u0
            return [Fraction(x) for x in b]
        out = [Fraction(0)] * n
        for k in range(n):
            s = Fraction(den) if k == 0 else Fraction(0)
            for j in range(1, min(k, d) + 1):
                s -= U[j] * out[k - j]
            out[k] = s / u0
        return out
    inv0 = Fraction(1, u[0]) if isinstance(u[0], int) else 1 / u[0]
    out = [0] * n
    for k in range(n):
        s = 1 if k == 0 else 0
        for j in range(1, min(k, d) + 1):
            s = s - u[j] * out[k - j]
        out[k] = s * inv0
    return out


def series_reciprocal(a: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """1/a as a Laurent series with lead -v(a).

    For an exact input the caller must supply the target ``order``; for a
    truncated input the order is a.order - 2 v(a) (and ``order`` may only
    lower it).
    """
    v, u, rel = _split_unit(a)
    natural = None if rel is None else rel - v
    if natural is None and order is None:
        raise OrderError("reciprocal of an exact polynomial needs an explicit order")
    if order is None:
        order = natural
    elif natural is not None and order > natural:
        raise OrderError(f"requested order {order} exceeds attainable {natural}")
    n = order + v
    if n <= 0:
        raise OrderError(f"order {order} leaves no coefficients (lead {-v})")
    return TruncatedSeries(-v, tuple(_inverse_unit(u, n)), order)


def _miller_power(u: Sequence, e: int, n: int) -> list:
    """First n coefficients of u**e (u[0] != 0) by the J.C.P. Miller recurrence."""
    d = len(u) - 1
    if _all_rational(u):
        U, den = _to_int_scaled(u)
        u0 = U[0]
        if u0 in (1, -1) and e >= -10**9:
            b = [0] * n
            b[0] = u0 ** e if e >= 0 else u0 ** (-e)
            for k in range(1, n):
                s = 0
                for j in range(1, min(k, d) + 1):
                    s += ((e + 1) * j - k) * U[j] * b[k - j]
                q, r = divmod(s * u0, k)
                if r:
                    break
                b[k] = q
            else:
                scale = Fraction(1, den) ** e if e >= 0 else Fraction(den) ** (-e)
                return [scale * x for x in b]
    u0 = u[0]
    b = [Fraction(0)] * n
    b[0] = u0 ** e
    for k in range(1, n):
        s = Fraction(0)
        for j in range(1, min(k, d) + 1):
            s = s + ((e + 1) * j - k) * u[j] * b[k - j]
        b[k] = s / (k * u0)
    return b


def series_pow(a: TruncatedSeries, e: int, order: int | None = None) -> TruncatedSeries:
    """a**e; negative e goes through the reciprocal.

    Exact inputs with e >= 0 stay exact.  Short exact polynomials raised to a
    negative power use the Miller recurrence (same coefficients as repeated
    squaring of the reciprocal, O(n*deg) work).
    """
    if not isinstance(e, int):
        raise TypeError("integer exponent required")
    if e == 0:
        one = TruncatedSeries(0, (Fraction(1),), None)
        return one if order is None and a.order is None else one.truncate(
            order if order is not None else a.order - 0)
    if e > 0 and order is None:
        return _pow_squaring(a, e)
    if e > 0:
        r = _pow_squaring(a, e)
        return r if r.order is not None and r.order <= order else r.truncate(order)
    v, u, rel = _split_unit(a)
    # a**e = t**(v e) * u**e; u**e known to rel terms
    if rel is None:
        if order is None:
            raise OrderError("negative power of an exact polynomial needs an explicit order")
        n = order - v * e
    else:
        n = rel if order is None else min(rel, order - v * e)
    if n <= 0:
        raise OrderError("requested order leaves no coefficients")
    if a.order is None and len(u) <= 64:
        coeffs = _miller_power(u, e, n)
    else:
        inv = _inverse_unit(u, n)
        coeffs = _pow_squaring(TruncatedSeries(0, tuple(inv), n), -e).coeffs
    return TruncatedSeries(v * e, tuple(coeffs[:n]), v * e + n)


def _pow_squaring(a: TruncatedSeries, e: int) -> TruncatedSeries:
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def derivative(a: TruncatedSeries) -> TruncatedSeries:
    coeffs = tuple((a.lead + k) * c for k, c in enumerate(a.coeffs))
    lead = a.lead - 1
    if a.lead == 0 and coeffs:
        coeffs, lead = coeffs[1:], 0  # the constant term dies
    order = None if a.order is None else a.order - 1
    if order is not None and lead >= order:
        return TruncatedSeries(order, (), order)
    return TruncatedSeries(lead, coeffs, order)


def theta(a: TruncatedSeries) -> TruncatedSeries:
    """The Euler operator t d/dt."""
    return TruncatedSeries(a.lead, tuple((a.lead + k) * c for k, c in enumerate(a.coeffs)),
                           a.order)


def log_derivative(a: TruncatedSeries, order: int | None = None) -> TruncatedSeries:
    """t a'(t)/a(t) as a power series; its constant term is v(a)."""
    v, u, rel = _split_unit(a)
    if rel is None:
        if order is None:
            raise OrderError("log-derivative of an exact polynomial needs an explicit order")
        n = order
    else:
        n = rel if order is None else min(rel, order)
    U = TruncatedSeries(0, tuple(u), None if rel is None else rel)
    tU = theta(U)
    inv = TruncatedSeries(0, tuple(_inverse_unit(u, n)), n)
    q = series_mul(tU if tU.order is None else tU.truncate(min(n, tU.order)), inv)
    q = q.truncate(n) if q.order is None or q.order > n else q
    return series_add(q, TruncatedSeries(0, (Fraction(v),), None))


def eval_at(a: TruncatedSeries, x):
    """Horner evaluation of the stored terms; exact for exact inputs and exact x.

    For truncated series the caller is responsible for the tail beyond order.
    """
    if not x:
        if a.lead < 0 and any(a.coeffs[: -a.lead]):
            raise DomainError("Laurent series with negative lead evaluated at 0")
        return a[0] if a.order is None or a.order > 0 else Fraction(0)
    acc = Fraction(0)
    for c in reversed(a.coeffs):
        acc = acc * x + c
    if a.lead:
        acc = acc * (x ** a.lead)
    return acc
