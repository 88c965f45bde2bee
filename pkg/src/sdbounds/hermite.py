"""Rescaled Hermite polynomials and the sqrt(m)-order refinement of the bound.

h_k is monic and orthogonal for exp(-x^2/2); sum h_k(x) t^k/k! = exp(tx - t^2/2).
Gaussian integrals are computed exactly from the moments E[x^(2j)] = (2j-1)!!.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .quadratic import Quad, exact_sign, to_mpf
from .roots import RootInterval, isolate_real_roots, isolate_root, peval, trim


@dataclass(frozen=True)
class HermitePoly:
    k: int
    coeffs: tuple  # low -> high, exact rationals

    def __call__(self, x):
        return peval(list(self.coeffs), x)

    def at_zero(self) -> Fraction:
        return self.coeffs[0]


@lru_cache(maxsize=None)
def _hermite_coeffs(k: int) -> tuple:
    if k == 0:
        return (Fraction(1),)
    prev, cur = [Fraction(1)], [Fraction(0), Fraction(1)]
    for j in range(1, k):
        nxt = [Fraction(0)] + cur  # x h_j
        for i, c in enumerate(prev):
            nxt[i] -= j * c
        prev, cur = cur, nxt
    return tuple(cur)


def hermite_poly(k: int) -> HermitePoly:
    """h_k via h_{k+1} = x h_k - k h_{k-1}."""
    if k < 0:
        raise ValueError("k >= 0 required")
    return HermitePoly(k, _hermite_coeffs(k))


def smallest_zero(k: int, prec: int = 128) -> RootInterval:
    """Certified isolating interval of the smallest zero of h_k."""
    if k < 1:
        raise ValueError("k >= 1 required")
    p = list(_hermite_coeffs(k))
    lo, hi = isolate_real_roots(p)[0]
    return isolate_root(p, lo, hi, prec)


# -- Gaussian moments --------------------------------------------------------

@lru_cache(maxsize=None)
def gaussian_moment(i: int) -> int:
    """E[x^i] for a standard normal x."""
    if i % 2:
        return 0
    out = 1
    for j in range(1, i, 2):
        out *= j
    return out


def gaussian_expectation(p):
    """(1/sqrt(2 pi)) int p(x) exp(-x^2/2) dx for a coefficient list p."""
    acc = Fraction(0)
    for i, c in enumerate(p):
        if c and i % 2 == 0:
            acc = acc + c * gaussian_moment(i)
    return acc


def pmul(a, b) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def orthogonality_table(K: int) -> list[list[Fraction]]:
    return [[gaussian_expectation(pmul(_hermite_coeffs(j), _hermite_coeffs(k)))
             for k in range(K + 1)] for j in range(K + 1)]


def orthogonality_ok(K: int) -> bool:
    from math import factorial
    T = orthogonality_table(K)
    return all(T[j][k] == (factorial(k) if j == k else 0)
               for j in range(K + 1) for k in range(K + 1))


# -- Christoffel-Darboux as an exact bivariate identity ------------------------

def _biv(px, py) -> dict:
    """p(x) q(y) as {(i, j): c}."""
    return {(i, j): a * b for i, a in enumerate(px) if a for j, b in enumerate(py) if b}


def _biv_add(a: dict, b: dict, s=1) -> dict:
    out = dict(a)
    for key, v in b.items():
        out[key] = out.get(key, 0) + s * v
        if not out[key]:
            del out[key]
    return out


def _divide_x_minus_y(N: dict) -> dict:
    """Exact quotient N(x, y)/(x - y); raises if the remainder is nonzero."""
    dx = max((i for i, _ in N), default=-1)
    rows = [dict() for _ in range(dx + 1)]  # coefficient of x^i as a poly in y
    for (i, j), c in N.items():
        rows[i][j] = c
    quot = [dict() for _ in range(dx)]
    carry: dict = {}
    for i in range(dx, 0, -1):
        cur = _biv_add({(0, j): c for j, c in rows[i].items()},
                       {(0, j + 1): c for (_, j), c in carry.items()})
        quot[i - 1] = cur
        carry = cur
    rem = _biv_add({(0, j): c for j, c in rows[0].items()} if rows else {},
                   {(0, j + 1): c for (_, j), c in carry.items()})
    if rem:
        raise ArithmeticError("x - y does not divide")
    return {(i, j): c for i, row in enumerate(quot) for (_, j), c in row.items()}


def christoffel_darboux_check(k: int, literal: bool = False) -> bool:
    """(h_k(x)h_{k-1}(y) - h_{k-1}(x)h_k(y)) / ((k-1)! (x - y)) == sum_{j<k} h_j(x)h_j(y)/j!.

    With ``literal=True`` the (k-1)! is dropped; that form only holds for k <= 2.
    """
    from math import factorial
    hk, hk1 = _hermite_coeffs(k), _hermite_coeffs(k - 1)
    N = _biv_add(_biv(hk, hk1), _biv(hk1, hk), -1)
    w = 1 if literal else factorial(k - 1)
    lhs = {key: v / w for key, v in _divide_x_minus_y(N).items()}
    rhs: dict = {}
    for j in range(k):
        hj = _hermite_coeffs(j)
        rhs = _biv_add(rhs, {key: v / factorial(j) for key, v in _biv(hj, hj).items()})
    return lhs == rhs


# -- the perturbed relation polynomial ----------------------------------------

@dataclass
class ImprovedPolynomial:
    k: int
    x0: object  # Fraction, Quad or mpf
    epsilon: Fraction
    p2: list
    p: list
    int_p1p2: object
    int_p2sq: object
    int_p: object
    largest_real_zero: mpmath.mpf
    zero_near_x0: bool


def _synthetic_division(p: list, x0) -> tuple[list, object]:
    """p(x) = (x - x0) q(x) + rem."""
    n = len(p) - 1
    q = [0] * n
    acc = p[n]
    for i in range(n - 1, -1, -1):
        q[i] = acc
        acc = p[i] + x0 * acc
    return q, acc


def _x0_value(k: int, prec: int):
    iv = smallest_zero(k, prec)
    if iv.exact is not None:
        return iv.exact, iv
    with mpmath.workprec(prec):
        return iv.mid(), iv


def default_epsilon(x0) -> Fraction:
    a = abs(to_mpf(x0)) if not isinstance(x0, Fraction) else abs(x0)
    if not a:
        return Fraction(1, 1000)
    return Fraction(mpmath.nstr(a, 12)).limit_denominator(10 ** 9) / 1000


def improved_polynomial(k: int, epsilon: Fraction | None = None, prec: int = 128) -> ImprovedPolynomial:
    """p = (x - x0 - eps) p2^2 + eps^2 with p2 = h_k/(x - x0); degree 2k - 1."""
    if k < 1:
        raise ValueError("k >= 1 required")
    x0, iv = _x0_value(k, prec)
    eps = default_epsilon(x0) if epsilon is None else Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    hk = list(_hermite_coeffs(k))
    with mpmath.workprec(prec):
        p2, rem = _synthetic_division(hk, x0)
        if isinstance(rem, (Fraction, Quad, int)):
            if exact_sign(rem):
                raise ArithmeticError("x - x0 does not divide h_k")
        elif abs(rem) > mpmath.mpf(2) ** (-prec // 2):
            raise ArithmeticError(f"division remainder {rem} above tolerance")
        p2sq = pmul(p2, p2)
        lin = [-x0 - eps, Fraction(1)]
        p = pmul(lin, p2sq)
        p[0] = p[0] + eps * eps
        i12 = gaussian_expectation(pmul(hk, p2))
        i22 = gaussian_expectation(p2sq)
        ip = gaussian_expectation(p)
        pf = [to_mpf(c) for c in p]
        roots = mpmath.polyroots(list(reversed(pf)), maxsteps=200, extraprec=2 * prec)
        real = [mpmath.re(z) for z in roots if abs(mpmath.im(z)) < mpmath.mpf(10) ** -20]
        top = max(real) if real else mpmath.mpf("nan")
        x0m = to_mpf(x0)
        near = bool(real) and x0m < top <= x0m + 2 * to_mpf(eps)
    if not near:
        warnings.warn(f"largest real zero of p is not within 2 eps of x0 (k={k}, eps={eps})")
    return ImprovedPolynomial(k, x0, eps, p2, p, i12, i22, ip, top, near)


def p2_christoffel_darboux(k: int, x0) -> list:
    """p2 = (k-1)! h_{k-1}(x0)^(-1) sum_{j<k} h_j(x) h_j(x0)/j!, a second route to h_k/(x - x0)."""
    from math import factorial
    out = [0] * k
    for j in range(k):
        hj = _hermite_coeffs(j)
        w = peval(list(hj), x0) / factorial(j)
        for i, c in enumerate(hj):
            out[i] = out[i] + c * w
    s = peval(list(_hermite_coeffs(k - 1)), x0)
    return [c * factorial(k - 1) / s for c in out]


def h_basis_expansion(p: list) -> list:
    """b_j with p = sum_j b_j h_j, from b_j = E[p h_j]/j!."""
    from math import factorial
    d = len(trim(list(p))) - 1
    return [gaussian_expectation(pmul(p, _hermite_coeffs(j))) / factorial(j)
            for j in range(d + 1)]


def h_basis_resum(b: list) -> list:
    out = [0] * len(b)
    for j, bj in enumerate(b):
        for i, c in enumerate(_hermite_coeffs(j)):
            out[i] = out[i] + bj * c
    return out


# -- second-order constants ----------------------------------------------------

@dataclass
class SecondOrderBound:
    family: str
    k: int
    C1: mpmath.mpf
    C2: mpmath.mpf
    C3: mpmath.mpf
    C1p: mpmath.mpf
    C2p: mpmath.mpf
    C3p: mpmath.mpf
    C: mpmath.mpf | None
    epsilon: Fraction
    x0: mpmath.mpf
    bound_coefficient: mpmath.mpf | None
    hypothesis_ok: bool
    lg_t0_prime: mpmath.mpf

    def to_json(self) -> dict:
        def s(v):
            return None if v is None else mpmath.nstr(v, 20)
        return {"family": self.family, "k": self.k, "C1": s(self.C1), "C2": s(self.C2),
                "C3": s(self.C3), "C1p": s(self.C1p), "C2p": s(self.C2p), "C3p": s(self.C3p),
                "C": s(self.C), "epsilon": str(self.epsilon), "x0": s(self.x0),
                "bound_coefficient": s(self.bound_coefficient),
                "hypothesis_ok": self.hypothesis_ok, "lg_t0_prime": s(self.lg_t0_prime)}


def _h_trivial_instance(fid):
    """Instance in the residue class of n with h = 1."""
    from .families import FamilyError, get_family
    for n in range(1, 2000):
        try:
            inst = get_family(fid, n)
        except FamilyError:
            continue
        if inst.h is not None and inst.h.order is None and inst.h.degree == 0 and inst.m >= 1:
            return inst
    raise FamilyError(f"no length with h = 1 found for {fid}")


def _point_constants(inst, t):
    """(1/h(t), -t (f/g)'(t), -t Lg'(t)) in big-float arithmetic."""
    from .series import derivative, eval_at
    f, g, h = inst.f, inst.g, inst.h
    tt = t if isinstance(t, mpmath.mpf) else to_mpf(t)
    F, dF, ddF = (to_mpf(eval_at(s, tt)) for s in (f, derivative(f), derivative(derivative(f))))
    G, dG, ddG = (to_mpf(eval_at(s, tt)) for s in (g, derivative(g), derivative(derivative(g))))
    H = to_mpf(eval_at(h, tt))
    dfg = (dF * G - F * dG) / G ** 2
    # Lg = t g'/g; Lg' = g'/g + t g''/g - t g'^2/g^2
    dLg = dG / G + tt * ddG / G - tt * dG ** 2 / G ** 2
    return 1 / H, -tt * dfg, -tt * dLg


def second_order_bound(fid, k: int, prec: int = 128, epsilon: Fraction | None = None) -> SecondOrderBound:
    """Constants C1..C3 at t0 and t0', the hypothesis test, and C sqrt(C3') x0^(k)."""
    from .constants import asymptotic_bound, find_t0, find_t0_prime, find_t1
    inst = _h_trivial_instance(fid)
    with mpmath.workprec(prec):
        t0 = find_t0(inst, prec)
        t1 = find_t1(inst, t0, prec)
        tp = find_t0_prime(inst, prec, t0, t1)
        a = t0.exact if t0.exact is not None else t0.mid()
        b = tp.exact if tp.exact is not None else tp.mid()
        C1, C2, C3 = _point_constants(inst, a)
        C1p, C2p, C3p = _point_constants(inst, b)
        left = abs(C2 * mpmath.sqrt(C3p))
        right = abs(C2p * mpmath.sqrt(C3))
        ok = bool(left < right)
        x0 = to_mpf(smallest_zero(k, prec).mid()) if k >= 1 else mpmath.mpf(0)
        if ok:
            C = mpmath.sqrt((C2p * mpmath.sqrt(C3)) ** 2 - (C2 * mpmath.sqrt(C3p)) ** 2) / \
                (C2p * mpmath.sqrt(C3))
            coef = C * mpmath.sqrt(C3p) * x0
        else:
            C = coef = None
        eps = default_epsilon(x0) if epsilon is None else Fraction(epsilon)
        lg = asymptotic_bound(inst.family.tag, prec).lg_t0_prime
    return SecondOrderBound(inst.family.tag, k, C1, C2, C3, C1p, C2p, C3p, C, eps, x0, coef, ok, lg)


# -- three-variable generating function, as a truncated identity ---------------

def mehler_lhs(order: int) -> list[dict]:
    """[t^k] of sum h_k(x) h_k(y) t^k/k! as bivariate dicts."""
    from math import factorial
    return [{key: v / factorial(k) for key, v in _biv(_hermite_coeffs(k), _hermite_coeffs(k)).items()}
            for k in range(order + 1)]
