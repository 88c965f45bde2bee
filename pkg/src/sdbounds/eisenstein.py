"""q-expansions for the modular-lattice families.

E2 follows the sign convention ``E2 = 1/24 - sum sigma(m) q^m`` (this is
-1/24 times the usual normalization 1 - 24 sum sigma(m) q^m), so that
q d/dq log eta = E2.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .series import TruncatedSeries

LATTICE_LEVELS = (1, 2, 3, 5, 6, 7, 11, 14, 15, 23)


def divisors(N: int) -> list[int]:
    return [d for d in range(1, N + 1) if N % d == 0]


@lru_cache(maxsize=None)
def sigma_table(M: int, k: int = 1) -> tuple[int, ...]:
    """sigma_k(m) for m = 0..M by sieve (sigma_k(0) = 0)."""
    s = [0] * (M + 1)
    for d in range(1, M + 1):
        dk = d ** k
        for m in range(d, M + 1, d):
            s[m] += dk
    return tuple(s)


def level_weight(N: int) -> int:
    """Sum of the divisors of N."""
    return sum(divisors(N))


def lattice_period(N: int) -> int:
    """Dimension step n0 = 24 * (number of divisors) / sigma(N)."""
    n0 = Fraction(24 * len(divisors(N)), level_weight(N))
    assert n0.denominator == 1
    return int(n0)


@lru_cache(maxsize=None)
def e2N_integer_coeffs(N: int, M: int) -> tuple[int, ...]:
    """24 * E2^(N) coefficients for q^0..q^M, as integers."""
    sig = sigma_table(M)
    out = [0] * (M + 1)
    out[0] = level_weight(N)
    for d in divisors(N):
        for k in range(1, M // d + 1):
            out[d * k] -= 24 * d * sig[k]
    return tuple(out)


def e2_series(M: int) -> TruncatedSeries:
    return e2N_series(1, M)


def e2N_series(N: int, M: int) -> TruncatedSeries:
    """E2^(N)(q) = sum_{d|N} d E2(q^d), truncated at order M+1."""
    c = e2N_integer_coeffs(N, M)
    return TruncatedSeries(0, tuple(Fraction(x, 24) for x in c), M + 1)


def e4_series(M: int) -> TruncatedSeries:
    s3 = sigma_table(M, 3)
    return TruncatedSeries(0, (1,) + tuple(240 * s3[m] for m in range(1, M + 1)), M + 1)


def eta_product_series(N: int, order: int) -> TruncatedSeries:
    """prod_{d|N} eta(d z)^(24/sigma(N)) in q = e^{2 pi i z}; lead q^1.

    Built directly from the product formula, one factor (1 - q^(dk)) at a time.
    """
    e = Fraction(24, level_weight(N))
    assert e.denominator == 1
    e = int(e)
    n = order - 1  # coefficients of the unit part needed
    acc = [0] * n
    acc[0] = 1
    for d in divisors(N):
        for k in range(1, (n - 1) // d + 1):
            deg = d * k
            for _ in range(e):
                for i in range(n - 1, deg - 1, -1):
                    acc[i] -= acc[i - deg]
    return TruncatedSeries(1, tuple(acc), order)


def e2N_tail_bound(N: int, M: int, t: Fraction) -> Fraction:
    """Rigorous bound on |sum_{j>M} [q^j] E2^(N) t^j| for 0 <= t.

    |[q^j] E2^(N)| <= sigma(N) j^2, and the terms j^2 t^j decay at ratio at
    most ((M+2)/(M+1))^2 t past M.
    """
    ratio = Fraction(M + 2, M + 1) ** 2 * t
    if ratio >= 1:
        raise ValueError("tail bound needs t * ((M+2)/(M+1))^2 < 1")
    first = Fraction((M + 1) ** 2) * t ** (M + 1)
    return level_weight(N) * first / (1 - ratio)


def e2N_truncated_value(N: int, M: int, t: Fraction) -> Fraction:
    """sum_{j<=M} [q^j] E2^(N) t^j exactly (integer Horner on a common denominator)."""
    c = e2N_integer_coeffs(N, M)
    p, q = t.numerator, t.denominator
    acc = 0
    qpow = 1
    # Horner from the top: acc = sum_j c_j p^j q^(M-j)
    for cj in reversed(c):
        acc = acc * p + cj * qpow
        qpow *= q
    return Fraction(acc, 24 * q ** M)
