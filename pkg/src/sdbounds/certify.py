"""Finite-n distance bounds from an exact sign pattern of c_{m+2} - r c_{m+1}.

If values[0] > 0 and values[j] >= 0 for D <= j <= m+2, then no enumerator
A >= 0 of the family's shape with A(0) = 1 can have nu(A - 1) >= D, since the
relation would equate a positive quantity with zero.  Hence d <= c (D - 1).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .families import FamilyInstance, get_family, parse_family
from .lagrange import _coef_json, alpha_pair, ratio_fg
from .quadratic import Quad, exact_sign


class CertificationError(ValueError):
    pass


class UnusableT3(CertificationError):
    """The sign pattern fails at this t3; another t3 may still work."""


@dataclass
class BoundCertificate:
    family: str
    n: int
    m: int
    c: int
    t3: Fraction | Quad
    D: int
    d_bound: int
    sign_witness: dict = field(default_factory=dict)
    digest: str = ""

    @property
    def ratio(self) -> float:
        return self.d_bound / self.n

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n, "m": self.m, "c": self.c,
                "t3": _coef_json(self.t3), "D": self.D, "d_bound": self.d_bound,
                "sign_witness": self.sign_witness, "digest": self.digest}


def _parse_t3(v):
    if isinstance(v, dict):
        return Quad(Fraction(v["a"]), Fraction(v["b"]), int(v["D"]))
    return Fraction(v)


def _check_exact(t3):
    if isinstance(t3, int):
        return Fraction(t3)
    if isinstance(t3, (Fraction, Quad)):
        return t3
    raise CertificationError("certification needs an exact t3 (rational or quadratic); "
                             "floating point values are refused")


def _digest(values) -> str:
    blob = json.dumps([_coef_json(v) for v in values], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _certify_from_alpha(inst: FamilyInstance, t3, a1, a2) -> BoundCertificate:
    r = ratio_fg(inst, t3)
    values = [x - r * y for x, y in zip(a2, a1)]
    m = inst.m
    if exact_sign(values[0]) <= 0:
        raise UnusableT3(f"t3 = {t3} unusable at n = {inst.n}: values[0] <= 0")
    if exact_sign(values[m + 2]) <= 0:
        raise UnusableT3(f"t3 = {t3} unusable at n = {inst.n}: values[m+2] <= 0")
    D = m + 2
    while D - 1 >= 1 and exact_sign(values[D - 1]) >= 0:
        D -= 1
    witness = {"values0": _coef_json(values[0]), "valuesD": _coef_json(values[D]),
               "ratio": _coef_json(r)}
    if D >= 2:
        witness["values_D_minus_1"] = _coef_json(values[D - 1])
    return BoundCertificate(inst.family.tag, inst.n, m, inst.c, t3, D, inst.c * (D - 1),
                            witness, _digest(values))


def certify(inst: FamilyInstance, t3) -> BoundCertificate:
    """Certificate for a single exact t3 (expected in (0, t0'))."""
    t3 = _check_exact(t3)
    if exact_sign(t3) <= 0:
        raise CertificationError("t3 must be positive")
    a1, a2 = alpha_pair(inst)
    return _certify_from_alpha(inst, t3, a1, a2)


def rational_below(x: Fraction, digits: int = 3) -> Fraction:
    """A rational with about ``digits`` significant digits, not above x."""
    if x <= 0:
        raise CertificationError("need a positive value")
    e = digits - 1 - math.floor(math.log10(x))
    scale = 10 ** e if e >= 0 else Fraction(1, 10 ** -e)
    return Fraction(math.floor(x * scale)) / scale


def default_grid(fid, k: int = 8, prec: int = 96) -> list[Fraction]:
    """k rationals equally spaced strictly inside (L/2, L), L just below t0'."""
    from .constants import asymptotic_bound
    ac = asymptotic_bound(parse_family(fid).tag, prec)
    L = rational_below(ac.t0_prime.lo)
    return [L / 2 + j * L / (2 * (k + 1)) for j in range(1, k + 1)]


def relation_instance(fid, n: int) -> FamilyInstance:
    """Family instance whose series order covers indices 0..m+2."""
    inst = get_family(fid, n)
    if inst.order < inst.m + 3:
        inst = get_family(fid, n, inst.m + 3)
    return inst


def certify_scan(fid, n: int, t3_grid=None, k: int = 8) -> BoundCertificate:
    """Best certificate over a t3 grid (min d_bound, ties to the smaller t3)."""
    fid = parse_family(fid)
    if t3_grid is None:
        t3_grid = default_grid(fid, k)
    t3_grid = [_check_exact(t) for t in t3_grid]
    if not t3_grid:
        raise CertificationError("empty t3 grid")
    inst = relation_instance(fid, n)
    a1, a2 = alpha_pair(inst)
    best, failures = None, []
    for t3 in sorted(t3_grid, key=lambda v: mpmath.mpf(float(v)) if isinstance(v, Quad) else v):
        try:
            cert = _certify_from_alpha(inst, t3, a1, a2)
        except UnusableT3 as exc:
            failures.append(str(exc))
            continue
        if best is None or cert.d_bound < best.d_bound:
            best = cert
    if best is None:
        raise UnusableT3("every grid point is unusable:\n  " + "\n  ".join(failures))
    return best


def verify_certificate(data: dict) -> bool:
    """Replay a serialized certificate from (family, n, t3) alone."""
    inst = relation_instance(data["family"], int(data["n"]))
    cert = certify(inst, _parse_t3(data["t3"]))
    return cert.to_json() == data
