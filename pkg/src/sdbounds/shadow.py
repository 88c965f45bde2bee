"""Shadow and quantum relation machinery.

Singly-even binary self-dual codes (shadow enumerator S), general self-dual
Z4 codes, and q-ary quantum codes (the pair C, D).  Everything sign-sensitive
runs over Q or Q(sqrt 5); floats only appear in reports.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from .families import FamilyError, get_family
from .lagrange import alpha_coefficients
from .quadratic import Quad, exact_sign, to_mpf
from .series import TruncatedSeries, poly, series_mul, series_pow


def _coef(s: TruncatedSeries, k: int):
    return s[k] if k >= s.lead else Fraction(0)


# -- singly-even binary codes -------------------------------------------------

def shadow_beta(n: int, i: int, j: int) -> Fraction:
    """Coefficient of [t^j] S(t) in c_i."""
    if n % 2:
        raise FamilyError("self-dual binary codes have even length")
    k = n // 8 - i - j
    if i < 0 or j < 0 or k < 0:
        return Fraction(0)
    # [t^k] (1+t)(1-t)^(-2i-1)
    val = comb(k + 2 * i, 2 * i) + (comb(k - 1 + 2 * i, 2 * i) if k >= 1 else 0)
    return (-1) ** i * Fraction(2) ** (6 * i - n // 2) * val


def shadow_alpha(n: int, i: int, j: int) -> Fraction:
    """Coefficient of [t^j] A(t) in c_i: [t^(i-j)] (1-6t+t^2)(1+t)^(6i-n/2)(1-t^2)^(-2i-1)."""
    if n % 2:
        raise FamilyError("self-dual binary codes have even length")
    k = i - j
    if k < 0 or i < 0:
        return Fraction(0)
    e = 6 * i - n // 2
    a = series_pow(poly([1, 1]), e, order=k + 1) if e < 0 else series_pow(poly([1, 1]), e)
    b = series_pow(poly([1, 0, -1]), -2 * i - 1, order=k + 1)
    s = series_mul(series_mul(poly([1, -6, 1]), a), b)
    return _coef(s, k)


def binary_A_term(n: int, i: int) -> TruncatedSeries:
    """(1+t)^((n mod 8)/2) ((1+t)^4)^(M-i) (t(1-t)^2)^i with M = [n/8]."""
    M = n // 8
    return series_mul(series_pow(poly([1, 1]), (n % 8) // 2 + 4 * (M - i)),
                      series_pow(poly([0, 1, -2, 1]), i))


def binary_S_term(n: int, i: int) -> TruncatedSeries:
    """2^((n mod 8)/2) (16t)^(M-i) (-(1-t)^2/4)^i."""
    M = n // 8
    scal = Fraction(2) ** ((n % 8) // 2) * Fraction(16) ** (M - i) * Fraction(-1, 4) ** i
    return series_mul(poly([0] * (M - i) + [scal]), series_pow(poly([1, -2, 1]), i))


def triangular_extraction(terms: list[TruncatedSeries], reverse: bool) -> list[list[Fraction]]:
    """Exact matrix X with c_i = sum_j X[i][j] [t^j](sum_i c_i terms[i]).

    Term i must have valuation i (reverse=False) or M - i (reverse=True).
    """
    M = len(terms) - 1
    idx = list(range(M + 1)) if not reverse else list(range(M, -1, -1))
    # T[r][s] = [t^r] terms[idx[s]], lower triangular with nonzero diagonal
    T = [[_coef(terms[idx[s]], r) for s in range(M + 1)] for r in range(M + 1)]
    inv = [[Fraction(0)] * (M + 1) for _ in range(M + 1)]
    for col in range(M + 1):
        e = [Fraction(int(r == col)) for r in range(M + 1)]
        x = [Fraction(0)] * (M + 1)
        for r in range(M + 1):
            acc = e[r] - sum(T[r][s] * x[s] for s in range(r))
            x[r] = acc / T[r][r]
        for s in range(M + 1):
            inv[s][col] = x[s]
    out = [[Fraction(0)] * (M + 1) for _ in range(M + 1)]
    for s in range(M + 1):
        out[idx[s]] = inv[s]
    return out


@dataclass
class ShadowPair:
    n: int
    kind: str
    M: int
    A_terms: list
    S_terms: list
    alpha: list = field(default_factory=list)  # alpha[i][j]
    beta: list = field(default_factory=list)
    audit: dict = field(default_factory=dict)

    def build(self, cs: list) -> tuple[TruncatedSeries, TruncatedSeries]:
        A = S = poly([0])
        for c, a, s in zip(cs, self.A_terms, self.S_terms):
            A = A + a.scale(c)
            S = S + s.scale(c)
        return A, S


def binary_shadow_pair(n: int) -> ShadowPair:
    M = n // 8
    A_terms = [binary_A_term(n, i) for i in range(M + 1)]
    S_terms = [binary_S_term(n, i) for i in range(M + 1)]
    alpha = [[shadow_alpha(n, i, j) for j in range(M + 1)] for i in range(M + 1)]
    beta = [[shadow_beta(n, i, j) for j in range(M + 1)] for i in range(M + 1)]
    return ShadowPair(n, "binary", M, A_terms, S_terms, alpha, beta)


def z4_general_bases(n: int) -> ShadowPair:
    """A- and S-bases for general self-dual Z4 codes (c_i included on the S side)."""
    if n < 8:
        raise FamilyError("z4-general needs n >= 8")
    M = n // 8
    f, g = series_pow(poly([1, 1]), 8), series_mul(poly([0, 1, 0, 1]), series_pow(poly([1, -1]), 4))
    A_terms = [series_mul(series_pow(poly([1, 1]), n - 8 * i), series_pow(g, i)) for i in range(M + 1)]
    sf = series_mul(poly([0, 64]), series_pow(poly([1, 1]), 2))
    sg = series_pow(poly([1, -1]), 4).scale(Fraction(1, 8))
    pre = series_pow(poly([1, 1]), (n // 4) % 2)
    S_terms = [series_mul(pre, series_mul(series_pow(sf, M - i), series_pow(sg, i))).scale((-1) ** i)
               for i in range(M + 1)]
    alpha = triangular_extraction(A_terms, reverse=False)
    beta = triangular_extraction(S_terms, reverse=True)
    ginv = series_pow(g, -1, order=50)
    audit = {
        "f_nonnegative": f.is_nonnegative(),
        "ginv_first_negative": ginv.first_negative(49),
        "S_f_nonnegative": sf.is_nonnegative(),
        "A_terms_low_order_nonnegative": all(_coef(t, j) >= 0 for t in A_terms for j in range(3)),
    }
    return ShadowPair(n, "z4", M, A_terms, S_terms, alpha, beta, audit)


SQRT5_INV = Quad(0, Fraction(1, 5), 5)  # 5^(-1/2)


def codes1_constant() -> Quad:
    t0 = SQRT5_INV
    return (1 + t0) ** 4 / (t0 * (1 - t0) ** 2)


def codes1_default_m(n: int) -> int:
    return 2 * -(-n // 24)


@dataclass
class Codes1Report:
    n: int
    m: int
    K: Quad
    s_side: list
    s_side_all_nonpositive: bool
    a_side_values: list
    a_side_positive_on_grid: bool
    t0_prime: mpmath.mpf
    a_side_at_t0: Quad
    a_side_slope_at_t0: mpmath.mpf
    a_side_coefficients_negative: list


def codes1_relation_report(n: int, m: int | None = None, grid: int = 20) -> Codes1Report:
    """Signs of c_{m+1} - K c_m, K = (1+t0)^4/(t0(1-t0)^2), t0 = 5^(-1/2)."""
    if n % 2:
        raise FamilyError("n must be even")
    M = n // 8
    if m is None:
        m = codes1_default_m(n)
    if m % 2 or not 0 <= m < M:
        raise FamilyError(f"need an even m with 0 <= m < [n/8] = {M}; got {m}")
    K = codes1_constant()
    s_side = [shadow_beta(n, m + 1, j) - K * shadow_beta(n, m, j) for j in range(M - m + 1)]
    s_ok = all(exact_sign(v) <= 0 for v in s_side)

    def target(t):
        return (1 - 6 * t + t * t) * ((1 + t) ** 4 / (t * (1 - t) ** 2) - K)

    s = mpmath.mpf(5) ** mpmath.mpf(-0.25)
    tp = ((1 - s) / (1 + s)) ** 2
    L = Fraction(mpmath.nstr(tp, 6)) - Fraction(1, 10 ** 5)
    pts = [L * k / grid for k in range(1, grid + 1)]
    vals = [(p, target(p)) for p in pts]
    a_ok = all(exact_sign(v) > 0 for _, v in vals)
    at_t0 = target(SQRT5_INV)
    t0m = to_mpf(SQRT5_INV)
    slope = mpmath.diff(lambda x: (1 - 6 * x + x * x) * ((1 + x) ** 4 / (x * (1 - x) ** 2)
                                                          - to_mpf(K)), t0m)
    a_coeffs = [shadow_alpha(n, m + 1, j) - K * shadow_alpha(n, m, j) for j in range(m + 2)]
    neg = [j for j, v in enumerate(a_coeffs) if exact_sign(v) < 0]
    return Codes1Report(n, m, K, s_side, s_ok, vals, a_ok, tp, at_t0, slope, neg)


# -- quantum codes --------------------------------------------------------------

def _bracket_coeffs(factors: list[list], m: int, scale=1) -> list:
    """scale * [t^(m+2-j)] prod(factors) (1-t)^(-m-3), j = 0..m+2."""
    P = poly([1])
    for fct in factors:
        P = series_mul(P, poly(fct))
    s = series_mul(P, series_pow(poly([1, -1]), -(m + 3), order=m + 3)).truncate(m + 3)
    return [scale * s[m + 2 - j] for j in range(m + 3)]


def quantum_gamma(q: int, m: int, i: int) -> list:
    """gamma_{ij}, j = 0..m+2, for i in {m+1, m+2}."""
    h2 = [1, -(q + 1)]
    if i == m + 1:
        return _bracket_coeffs([h2, [0, 1, -1]], m)
    if i == m + 2:
        return _bracket_coeffs([h2, [1, q - 1], [1, q - 1]], m)
    raise ValueError("closed forms are given for i = m+1, m+2 only")


def quantum_delta(q: int, m: int, i: int) -> list:
    h = [1, q - 1]
    if i == m + 1:
        return _bracket_coeffs([h, [0, 1, -1]], m)
    if i == m + 2:
        return _bracket_coeffs([h, [1, q - 1], [1, q - 1]], m)
    raise ValueError("closed forms are given for i = m+1, m+2 only")


def quantum_bl_gamma_delta(q: int, m: int, i: int) -> tuple[list, list]:
    """gamma and delta rebuilt from the generic Burmann-Lagrange pipeline."""
    inst = get_family(f"quantum-{q}", 2 * m + 1, order=m + 8)
    g = alpha_coefficients(inst, i, m + 2).values
    inst_d = dataclasses.replace(inst, h=inst.h2)
    d = alpha_coefficients(inst_d, i, m + 2).values
    return g, d


@dataclass
class QuantumScan:
    q: int
    m: int
    cd_side: list
    c_side: list
    threshold: int
    threshold_ratio: float
    target: Fraction
    c_side_negative: list
    relation_check: bool


def quantum_relation_scan(q: int, m: int) -> QuantumScan:
    """(q+1)(c_{m+2} - K c_{m+1}) - (q-1)(d_{m+2} - K d_{m+1}), K = (q+1)^2."""
    if q < 2 or m < 4:
        raise ValueError("need q >= 2 and m >= 4")
    K = (q + 1) ** 2
    cd = _bracket_coeffs([[1, q - 1], [1, -2], [1, -(q * q + 1)]], m, q - 1)
    cc = _bracket_coeffs([[1, -2], [1, -(q * q + 1)], [1, -(q * q + 1)]], m, 2)
    # the same two sequences assembled from gamma/delta
    g1, g2 = quantum_gamma(q, m, m + 1), quantum_gamma(q, m, m + 2)
    d1, d2 = quantum_delta(q, m, m + 1), quantum_delta(q, m, m + 2)
    cd2 = [(q - 1) * (b - K * a) for a, b in zip(d1, d2)]
    cc2 = [(q + 1) * (b - K * a) - (q - 1) * (y - K * x) for a, b, x, y in zip(g1, g2, d1, d2)]
    j = m + 2
    while j - 1 >= 0 and cd[j - 1] > 0:
        j -= 1
    neg = [k for k, v in enumerate(cc) if v < 0]
    return QuantumScan(q, m, cd, cc, j, j / m, 1 - Fraction(1, q * q), neg,
                       cd == cd2 and cc == cc2)


# -- the positivity lemma for F(a)G(a)^l +- F(-a)G(-a)^l --------------------------

@dataclass
class ShadowLemmaReport:
    grid: list
    positive_by_l: dict
    threshold: int | None


def _peval(p: list, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def shadow_lemma_check(F: list, G: list, I_endpoints: tuple, l_range, points: int = 41) -> ShadowLemmaReport:
    """Smallest l in l_range from which both symmetrized functions are positive on the grid."""
    F = [Fraction(c) for c in F]
    G = [Fraction(c) for c in G]
    if any(c < 0 for c in G) or not G[0] > 0 or len(G) < 2 or not G[1] > 0:
        raise ValueError("need G >= 0 coefficientwise with G(0) > 0 and G'(0) > 0")
    a0, a1 = (Fraction(x) for x in I_endpoints)
    grid = [a0 + (a1 - a0) * k / (points - 1) for k in range(points)]
    if any(_peval(F, a) <= 0 for a in grid):
        raise ValueError("F must be positive on I")
    dF0 = F[1] if len(F) > 1 else Fraction(0)
    ok = {}
    for l in l_range:
        good = True
        for a in grid:
            if a == 0:
                e = 2 * F[0] * G[0] ** l
                o = 2 * (dF0 * G[0] ** l + l * F[0] * G[0] ** (l - 1) * G[1])
            else:
                p, mneg = _peval(F, a) * _peval(G, a) ** l, _peval(F, -a) * _peval(G, -a) ** l
                e, o = p + mneg, (p - mneg) / a
            if e <= 0 or o <= 0:
                good = False
                break
        ok[l] = good
    ls = sorted(ok)
    thr = None
    for idx, l in enumerate(ls):
        if all(ok[x] for x in ls[idx:]):
            thr = l
            break
    return ShadowLemmaReport(grid, ok, thr)
