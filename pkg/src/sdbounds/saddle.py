"""Numerical checks of the saddle-point estimates for [t^k] F(t) G(t)^n.

F and G are rational functions with exact rational coefficients, so both the
exact coefficient (via exact series arithmetic) and the Euler-operator jets
(theta^l G)(r) at the saddle r are available without numerical
differentiation.  Estimates use big-float (and complex big-float) arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .hermite import hermite_poly
from .quadratic import DomainError, to_mpf
from .roots import smallest_positive_root
from .series import TruncatedSeries, poly, series_mul, series_pow


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class RationalFunction:
    """num/den with exact polynomial numerator and denominator, den(0) != 0."""

    num: TruncatedSeries
    den: TruncatedSeries

    def __post_init__(self):
        if self.num.order is not None or self.den.order is not None:
            raise PreconditionError("numerator and denominator must be exact polynomials")
        if self.den.lead != 0 or not self.den[0]:
            raise PreconditionError("denominator must be a unit at t = 0")

    def expansion(self, order: int) -> TruncatedSeries:
        inv = series_pow(self.den, -1, order=order)
        return series_mul(self.num, inv).truncate(order)

    def coeff_power(self, n: int, k: int) -> Fraction:
        """[t^k] of (num/den)^n, exactly."""
        if k < 0:
            return Fraction(0)
        numn = series_pow(self.num, n) if n else poly([1])
        denn = series_pow(self.den, -n, order=k + 1) if n else poly([1]).truncate(k + 1)
        acc = Fraction(0)
        for j in range(max(numn.lead, 0), min(k, numn.degree) + 1):
            if numn[j]:
                acc += numn[j] * denn[k - j]
        return acc

    def radius(self) -> mpmath.mpf:
        """Smallest positive real zero of den (a guard, not the true radius)."""
        coeffs = [self.den[j] for j in range(self.den.degree + 1)]
        if len(coeffs) == 1:
            return mpmath.inf
        try:
            return smallest_positive_root(coeffs, 64).mid()
        except Exception:
            return mpmath.inf

    def __call__(self, t):
        def ev(p):
            acc = 0
            for j in range(p.degree, -1, -1):
                acc = acc * t + (to_mpf(p[j]) if p[j] else 0)
            return acc
        return ev(self.num) / ev(self.den)

    def theta_jet(self, r, K: int) -> list:
        """[(theta^l F)(r) for l = 0..K] via the s-expansion of F(r e^s)."""
        num_s = _exp_substitute(self.num, r, K)
        den_s = _exp_substitute(self.den, r, K)
        q = _div(num_s, den_s, K + 1)
        return [q[l] * math.factorial(l) for l in range(K + 1)]

    def log_jet(self, r, K: int) -> list:
        """Cumulants kappa_l = (theta^(l-1) S)(r), l = 1..K, of log F(r e^s)."""
        num_s = _exp_substitute(self.num, r, K)
        den_s = _exp_substitute(self.den, r, K)
        ls = _sub(_log(num_s, K + 1), _log(den_s, K + 1))
        return [None] + [ls[l] * math.factorial(l) for l in range(1, K + 1)]


def rational_function(num, den=(1,)) -> RationalFunction:
    return RationalFunction(poly(list(num)), poly(list(den)))


def binomial_case() -> RationalFunction:
    """G = 1/(1 - t): the oracle [t^k] G^n = C(n+k-1, k)."""
    return rational_function([1], [1, -1])


# -- list-based big-float series helpers -------------------------------------

def _exp_substitute(p: TruncatedSeries, r, K: int) -> list:
    """Coefficients of p(r e^s) in s up to s^K."""
    r = to_mpf(r)
    terms = [(j, to_mpf(p[j]) * r ** j) for j in range(p.degree + 1) if p[j]]
    return [sum(c * mpmath.mpf(j) ** l for j, c in terms) / math.factorial(l)
            for l in range(K + 1)]


def _mul(a: list, b: list, N: int) -> list:
    out = [0] * N
    for i, x in enumerate(a[:N]):
        if x:
            for j, y in enumerate(b[:N - i]):
                out[i + j] += x * y
    return out


def _sub(a: list, b: list) -> list:
    return [x - y for x, y in zip(a, b)]


def _div(a: list, b: list, N: int) -> list:
    out = []
    for k in range(N):
        acc = a[k] if k < len(a) else 0
        for j in range(1, min(k, len(b) - 1) + 1):
            acc -= b[j] * out[k - j]
        out.append(acc / b[0])
    return out


def _log(a: list, N: int) -> list:
    """log(a(s)) - log(a(0)) via the integral of a'/a."""
    da = [(k + 1) * a[k + 1] for k in range(len(a) - 1)]
    q = _div(da, a, N - 1)
    return [0] + [q[k] / (k + 1) for k in range(N - 1)]


def _pow_real(a: list, e, N: int) -> list:
    """a(y)^e for a(0) != 0 by the Miller recurrence."""
    out = [a[0] ** e]
    for k in range(1, N):
        acc = 0
        for j in range(1, min(k, len(a) - 1) + 1):
            acc += (e * j - (k - j)) * a[j] * out[k - j]
        out.append(acc / (k * a[0]))
    return out


def _compose(f: list, g: list, N: int) -> list:
    """f(g(x)) for g(0) = 0, by Horner."""
    out = [0] * N
    for c in reversed(f[:N]):
        out = _mul(out, g, N)
        out[0] += c
    return out


# -- reports -----------------------------------------------------------------

@dataclass
class SaddleReport:
    r: mpmath.mpf
    n: int
    index: int
    exact: mpmath.mpf
    estimate: mpmath.mpf
    relative_error: mpmath.mpf
    order_used: int

    def to_json(self) -> dict:
        return {"r": mpmath.nstr(self.r, 20), "n": self.n, "index": self.index,
                "exact": mpmath.nstr(self.exact, 20), "estimate": mpmath.nstr(self.estimate, 20),
                "relative_error": mpmath.nstr(self.relative_error, 8),
                "order_used": self.order_used}


def _saddle_data(G: RationalFunction, r, n: int, K: int):
    if to_mpf(r) <= 0 or to_mpf(r) >= G.radius():
        raise PreconditionError(f"r = {r} outside (0, radius guard)")
    kap = G.log_jet(r, K)
    S, rSp = kap[1], kap[2]
    if rSp <= 0:
        raise DomainError("r S'(r) must be positive (G must not be a monomial)")
    index = int(mpmath.nint(S * n))
    return kap, index


def _exact(F: RationalFunction, G: RationalFunction, n: int, k: int) -> Fraction:
    """[t^k] F G^n, exactly."""
    Fs = F.expansion(k + 1)
    acc = Fraction(0)
    # G^n coefficients once, then a short convolution
    numn = series_pow(G.num, n) if n else poly([1])
    denn = series_pow(G.den, -n, order=k + 1)
    Gn = series_mul(numn, denn).truncate(k + 1)
    for j in range(k + 1):
        if Fs[j]:
            acc += Fs[j] * Gn[k - j]
    return acc


def first_order_estimate(F: RationalFunction, G: RationalFunction, r, n: int,
                         prec: int = 128) -> SaddleReport:
    """(2 pi n r S'(r))^(-1/2) r^(-k) G(r)^n F(r) against [t^k] F G^n, k = round(S(r) n)."""
    with mpmath.workprec(prec):
        kap, k = _saddle_data(G, r, n, 2)
        rr = to_mpf(r)
        est = (2 * mpmath.pi * n * kap[2]) ** mpmath.mpf(-0.5) * rr ** (-k) * G(rr) ** n * F(rr)
        exact = to_mpf(_exact(F, G, n, k))
        return SaddleReport(rr, n, k, exact, est, abs(est / exact - 1), 1)


def gamma_series(kappa: list, K: int) -> list:
    """Coefficients of gamma(x), the inverse of y -> y sqrt(1 + psi(y)), to x^(2K-1).

    phi(y) = sum_{l>=2} kappa_l (i y)^l / l! = -(kappa_2/2) y^2 (1 + psi(y)).
    """
    N = 2 * K
    onepsi = []
    for l in range(2, N + 2):
        onepsi.append(kappa[l] * (1j) ** l / math.factorial(l) * (-2 / kappa[2]))
    onepsi = [mpmath.mpc(c) for c in onepsi]
    if abs(onepsi[0] - 1) > mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
        raise PreconditionError("reversion failed: 1 + psi(0) != 1")
    gam = [mpmath.mpc(0)]
    for m in range(1, N + 1):
        pw = _pow_real(onepsi, -mpmath.mpf(m) / 2, m)
        gam.append(pw[m - 1] / m)
    return gam


def higher_order_estimate(F: RationalFunction, G: RationalFunction, r, n: int, k: int,
                          prec: int = 128) -> SaddleReport:
    """The k-term saddle expansion, with the index offset S(r) n - round(S(r) n) kept as a phase."""
    if k < 1:
        raise PreconditionError("k >= 1 required")
    _check_consecutive(G)
    with mpmath.workprec(prec):
        N = 2 * k
        kap, idx = _saddle_data(G, r, n, N + 2)
        rr = to_mpf(r)
        delta = kap[1] * n - idx
        gam = gamma_series(kap, k)
        dgam = [(j + 1) * gam[j + 1] for j in range(N - 1)] + [0]
        Fj = F.theta_jet(rr, N)
        Fy = [mpmath.mpc(Fj[l]) * (1j) ** l / math.factorial(l) for l in range(N)]
        phase = [(1j * delta) ** l / math.factorial(l) for l in range(N)]
        Fy = _mul(Fy, phase, N)
        H = _mul(_compose(Fy, gam[:N], N), dgam, N)
        A = n * kap[2]
        total = mpmath.mpc(0)
        for j in range(k):
            total += A ** (-j) / (2 ** j * math.factorial(j)) * math.factorial(2 * j) * H[2 * j]
        est = (2 * mpmath.pi * A) ** mpmath.mpf(-0.5) * rr ** (-idx) * G(rr) ** n * total.real
        exact = to_mpf(_exact(F, G, n, idx))
        return SaddleReport(rr, n, idx, exact, est, abs(est / exact - 1), k)


def _check_consecutive(G: RationalFunction, order: int = 64):
    s = G.expansion(order)
    if not any(s[j] and s[j + 1] for j in range(order - 1)):
        raise PreconditionError("G needs two consecutive nonzero coefficients")


@dataclass
class ProfileReport:
    r0: mpmath.mpf
    k: int
    n: int
    rows: list
    flip_between: tuple | None
    flip_ok: bool | None
    max_scaled_deviation: mpmath.mpf


def hermite_profile_check(F: RationalFunction, G: RationalFunction, r0, k: int, n: int,
                          r_grid, prec: int = 128) -> ProfileReport:
    """Compare [t^i]F G^n / [t^i]G^n with the rescaled h_k profile around r0."""
    with mpmath.workprec(prec):
        r0m = to_mpf(r0)
        kap0 = G.log_jet(r0, 2)
        scale = kap0[2] / r0m ** 2 * n  # S'(r0) n / r0, with S' = kappa_2 / r
        hk = hermite_poly(k)
        Fk = F.theta_jet(r0, 0)  # only used for k = 0
        lead = _taylor_coeff(F, r0m, k) if k else Fk[0]
        rows, prev, flip = [], None, None
        max_dev = mpmath.mpf(0)
        grid = sorted(r_grid)
        for r in grid:
            rm = to_mpf(r)
            kap = G.log_jet(r, 2)
            idx = int(mpmath.nint(kap[1] * n))
            num = _exact(F, G, n, idx)
            den = G.coeff_power(n, idx)
            ratio = to_mpf(num) / to_mpf(den)
            x = (rm - r0m) * mpmath.sqrt(scale)
            pred = lead * hk(x) / scale ** (mpmath.mpf(k) / 2)
            dev = abs(ratio - pred) / max(abs(rm - r0m), mpmath.mpf(n) ** -0.5) ** (k + 1)
            max_dev = max(max_dev, dev)
            rows.append({"r": rm, "index": idx, "ratio": ratio, "predicted": pred})
            if prev is not None and flip is None and mpmath.sign(prev[1]) != mpmath.sign(ratio) \
                    and ratio != 0:
                flip = (prev[0], rm)
            prev = (rm, ratio)
        flip_ok = None
        if k == 1:
            flip_ok = flip is not None and flip[0] <= r0m <= flip[1]
        return ProfileReport(r0m, k, n, rows, flip, flip_ok, max_dev)


def _taylor_coeff(F: RationalFunction, r0, k: int):
    """F^(k)(r0)/k! from the exact polynomial shift (numerators only; den must be 1)."""
    if F.den.degree != 0:
        return mpmath.taylor(lambda t: F(t), r0, k)[k]
    c = mpmath.mpf(0)
    for j in range(k, F.num.degree + 1):
        if F.num[j]:
            c += to_mpf(F.num[j]) * mpmath.binomial(j, k) * r0 ** (j - k)
    return c


@dataclass
class LogConvexityReport:
    values: list
    all_positive: bool


def logconvexity_check(f: RationalFunction, s_grid, prec: int = 128,
                       order: int = 64) -> LogConvexityReport:
    """(d/ds)^2 log f(e^s) = (f theta^2 f - (theta f)^2)/f^2 on a grid of s."""
    s = f.expansion(order)
    coeffs = [s[j] for j in range(order)]
    if any(c < 0 for c in coeffs):
        raise PreconditionError("f must have nonnegative coefficients")
    if sum(1 for c in coeffs if c) < 2:
        raise PreconditionError("f is proportional to a monomial")
    vals = []
    with mpmath.workprec(prec):
        for sv in s_grid:
            r = mpmath.exp(to_mpf(sv))
            if r >= f.radius():
                raise PreconditionError(f"e^s = {r} outside the radius guard")
            j = f.theta_jet(r, 2)
            vals.append((j[0] * j[2] - j[1] ** 2) / j[0] ** 2)
    return LogConvexityReport(vals, all(v > 0 for v in vals))


def modulus_bound_check(f: RationalFunction, r, samples: int = 50, seed: int = 0,
                        tol: float = 1e-12) -> dict:
    """|f(t)| <= f(|t|) at random points of the circle |t| = r."""
    rng = random.Random(seed)
    rr = to_mpf(r)
    top = f(rr)
    worst = mpmath.mpf(-1)
    for _ in range(samples):
        t = rr * mpmath.expjpi(2 * mpmath.mpf(rng.random()))
        worst = max(worst, abs(f(t)) - top)
    return {"r": rr, "f_r": top, "max_excess": worst, "ok": bool(worst <= tol * abs(top))}
