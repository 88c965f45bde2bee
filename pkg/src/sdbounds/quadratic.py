"""Exact arithmetic in real quadratic fields Q(sqrt(D))."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import mpmath


class DomainError(ValueError):
    """Raised when coefficients from incompatible domains are mixed."""


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (s, D) with n = s**2 * D and D square-free."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, D = 1, 1
    p = 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            D *= p
        p += 1
    D *= m
    return s, D


class Quad:
    """The number a + b*sqrt(D) with a, b rational and D > 1 square-free.

    Instances are immutable.  Comparisons and sign tests are exact.
    """

    __slots__ = ("a", "b", "D")

    def __init__(self, a, b, D: int):
        if D <= 1:
            raise DomainError(f"need a square-free D > 1, got {D}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "D", int(D))

    def __setattr__(self, name, value):
        raise AttributeError("Quad is immutable")

    @classmethod
    def sqrt(cls, n: int) -> "Quad | Fraction":
        """sqrt(n) for a positive integer n; a Fraction when n is a square."""
        s, D = squarefree_decompose(n)
        if D == 1:
            return Fraction(s)
        return cls(0, s, D)

    def _coerce(self, other):
        if isinstance(other, Quad):
            if other.D != self.D:
                raise DomainError(f"cannot mix Q(sqrt {self.D}) and Q(sqrt {other.D})")
            return other
        if isinstance(other, (int, Rational)):
            return Quad(other, 0, self.D)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, mpmath.mpf):
                return self.to_mpf() + other
            return NotImplemented
        return Quad(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.D)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, mpmath.mpf):
                return self.to_mpf() * other
            return NotImplemented
        return Quad(self.a * o.a + self.b * o.b * self.D,
                    self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def conjugate(self) -> "Quad":
        return Quad(self.a, -self.b, self.D)

    def inverse(self) -> "Quad":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return Quad(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, mpmath.mpf):
                return self.to_mpf() / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, mpmath.mpf):
                return other / self.to_mpf()
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = Quad(1, 0, self.D)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 D
        d = self.a * self.a - self.b * self.b * self.D
        return sa if d > 0 else (-sa if d < 0 else 0)

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.a, self.b, self.D) == (other.a, other.b, other.D) or (
                self.b == 0 and other.b == 0 and self.a == other.a)
        if isinstance(other, (int, Rational)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def _cmp(self, other) -> int:
        if isinstance(other, mpmath.mpf):
            x = self.to_mpf()
            return (x > other) - (x < other)
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def to_mpf(self):
        a = mpmath.mpf(self.a.numerator) / self.a.denominator
        b = mpmath.mpf(self.b.numerator) / self.b.denominator
        return a + b * mpmath.sqrt(self.D)

    def __float__(self):
        return float(self.to_mpf())

    def __repr__(self):
        return f"Quad({self.a}, {self.b}, {self.D})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = {1: "", -1: "-"}.get(self.b, f"{self.b}*") + f"sqrt({self.D})"
        if not self.a:
            return root
        return f"{self.a}{'' if self.b < 0 else '+'}{root}"


def to_mpf(x):
    """Convert an int, Fraction, Quad or mpf to an mpf at current precision."""
    if isinstance(x, Quad):
        return x.to_mpf()
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def exact_sign(x) -> int:
    if isinstance(x, Quad):
        return x.sign()
    return (x > 0) - (x < 0)


def isqrt_exact(n: int) -> int | None:
    r = math.isqrt(n)
    return r if r * r == n else None
