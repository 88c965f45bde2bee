"""Registry of Gleason-type bases (f, g, h) for each family of codes or lattices.

Every admissible enumerator of length n has the form

    A(t) = h(t) * sum_{0<=i<=m} c_i f(t)^(m-i) g(t)^i

with f(0) = h(0) = 1, g(t) = t + O(t^2), and the minimum distance is
c * v(A - 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .eisenstein import (LATTICE_LEVELS, e4_series, eta_product_series, lattice_period,
                         level_weight)
from .quadratic import Quad
from .series import (OrderError, TruncatedSeries, poly, series_mul, series_pow,
                     series_reciprocal)

CODE_PAIRS = ((2, 2), (2, 4), (3, 3), (4, 2))


class FamilyError(ValueError):
    """Unknown family, inadmissible parameters or incompatible length."""


@dataclass(frozen=True)
class FamilyId:
    kind: str
    q: int | None = None
    c: int | None = None
    N: int | None = None

    def __post_init__(self):
        k = self.kind
        if k == "code":
            if self.q is None or self.c is None or self.q < 2:
                raise FamilyError("code family needs q > 1 and c")
            if not (self.c == 1 or (self.q, self.c) in CODE_PAIRS):
                raise FamilyError(f"(q, c) = ({self.q}, {self.c}) is not admissible")
        elif k == "lattice":
            if self.N not in LATTICE_LEVELS:
                raise FamilyError(f"unsupported lattice level N = {self.N}")
        elif k == "quantum":
            if self.q is None or self.q < 2:
                raise FamilyError("quantum family needs q >= 2")
        elif k not in ("z4-type2", "z4-general", "binary-sd-shadow", "fsd-binary-shadow"):
            raise FamilyError(f"unknown family kind {k!r}")

    @property
    def tag(self) -> str:
        if self.kind == "code":
            return f"code-{self.q}-{self.c}"
        if self.kind == "lattice":
            return f"lattice-{self.N}"
        if self.kind == "quantum":
            return f"quantum-{self.q}"
        return self.kind

    def __str__(self):
        return self.tag


def parse_family(tag: str | FamilyId) -> FamilyId:
    """Parse tags such as 'code-2-4', 'lattice-23', 'quantum-3', 'z4-type2'."""
    if isinstance(tag, FamilyId):
        return tag
    t = tag.strip().lower()
    m = re.fullmatch(r"code[-(]?(\d+)[-,](\d+)\)?", t)
    if m:
        return FamilyId("code", q=int(m.group(1)), c=int(m.group(2)))
    m = re.fullmatch(r"lattice[-(]?(\d+)\)?", t)
    if m:
        return FamilyId("lattice", N=int(m.group(1)))
    m = re.fullmatch(r"quantum[-(]?(\d+)\)?", t)
    if m:
        return FamilyId("quantum", q=int(m.group(1)))
    return FamilyId(t)


def registered_families() -> list[FamilyId]:
    out = [FamilyId("code", q=q, c=c) for q, c in CODE_PAIRS]
    out += [FamilyId("code", q=q, c=1) for q in (2, 3, 4, 5, 9)]
    out += [FamilyId("z4-type2"), FamilyId("z4-general"), FamilyId("binary-sd-shadow"),
            FamilyId("fsd-binary-shadow")]
    out += [FamilyId("lattice", N=N) for N in LATTICE_LEVELS]
    out += [FamilyId("quantum", q=q) for q in (2, 3, 4, 5)]
    return out


@dataclass(frozen=True)
class FamilyInstance:
    """A concrete basis for one family at one length n.

    ``order`` is the working truncation order for quantities that are not
    polynomials (reciprocals, lattice q-series).  ``h2`` is the secondary
    prefactor used by the quantum D-enumerator.
    """

    family: FamilyId
    n: int
    f: TruncatedSeries | None
    g: TruncatedSeries
    h: TruncatedSeries | None
    m: int
    c: int
    n0: int
    order: int
    q: int | None = None
    closed_form: dict | None = None
    h2: TruncatedSeries | None = None
    notes: dict = field(default_factory=dict)

    @property
    def g_tilde(self) -> TruncatedSeries:
        """g(t)/t, a unit power series."""
        return self.g.shift(-1)

    def basis_term(self, i: int, order: int | None = None) -> TruncatedSeries:
        """h f^(m-i) g^i (truncated at ``order`` when given)."""
        if self.f is None or self.h is None:
            raise FamilyError(f"{self.family} exposes no f/h basis")
        if i <= self.m:
            t = series_mul(series_mul(self.h, series_pow(self.f, self.m - i)),
                           series_pow(self.g, i))
        else:
            o = order if order is not None else self.order
            t = series_mul(series_mul(self.h, series_pow(self.f, self.m - i, order=o)),
                           series_pow(self.g, i))
        if order is not None and (t.order is None or t.order > order):
            t = t.truncate(order)
        return t

    def enumerator(self, cs, order: int | None = None) -> TruncatedSeries:
        """h * sum c_i f^(m-i) g^i for a coefficient list c_0..c_k (k <= m)."""
        acc = None
        for i, ci in enumerate(cs):
            if not ci:
                continue
            term = self.basis_term(i, order).scale(ci)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = poly([])
        if order is not None and (acc.order is None or acc.order > order):
            acc = acc.truncate(order)
        return acc


def _pow_poly(base: list, e: int) -> TruncatedSeries:
    return series_pow(poly(base), e)


def _sqrt_int(q: int):
    return Quad.sqrt(q)


THETA8 = [1, 60, 134, 60, 1]


def get_family(fid, n: int, order: int | None = None) -> FamilyInstance:
    """Instantiate the basis of family ``fid`` at length (or dimension) n."""
    fid = parse_family(fid)
    if n < 0:
        raise FamilyError("length must be nonnegative")
    k = fid.kind
    if order is None:
        order = 64
    if k == "code":
        return _code_family(fid, n, order)
    if k == "quantum":
        if n % 2 == 0:
            raise FamilyError("quantum family is implemented for odd length n = 2m+1")
        q = fid.q
        lin = poly([1, q - 1])
        return FamilyInstance(
            fid, n, f=series_pow(lin, 2), g=poly([0, 1, -1]), h=lin, m=(n - 1) // 2,
            c=1, n0=2, order=order, q=q, h2=poly([1, -(q + 1)]),
            closed_form={"q": q * q, "c": 1, "n0": 2})
    if k == "z4-type2":
        if n % 8:
            raise FamilyError("Type II Z4 codes need 8 | n")
        return FamilyInstance(
            fid, n, f=_pow_poly(THETA8, 3),
            g=series_mul(series_mul(poly([0, 1]), _pow_poly([1, -1], 6)), _pow_poly([1, 0, -1], 2)),
            h=_pow_poly(THETA8, n // 8 - 3 * (n // 24)), m=n // 24, c=8, n0=24, order=order)
    if k == "z4-general":
        if n < 8:
            raise FamilyError("z4-general needs n >= 8")
        return FamilyInstance(
            fid, n, f=_pow_poly([1, 1], 8),
            g=series_mul(series_mul(poly([0, 1]), poly([1, 0, 1])), _pow_poly([1, -1], 4)),
            h=_pow_poly([1, 1], n % 8), m=n // 8, c=4, n0=8, order=order)
    if k in ("binary-sd-shadow", "fsd-binary-shadow"):
        if n % 2:
            raise FamilyError("self-dual binary codes have even length")
        notes = {}
        if k == "fsd-binary-shadow":
            # The relation index grows like n/4 rather than the n/3 one would
            # expect by analogy; recorded, not derived.
            notes["relation_m"] = n // 4
            notes["flag"] = "m ~ n/4 for formally self-dual shadows (not derived here)"
        return FamilyInstance(
            fid, n, f=_pow_poly([1, 1], 4), g=series_mul(poly([0, 1]), _pow_poly([1, -1], 2)),
            h=_pow_poly([1, 1], (n % 8) // 2), m=n // 8, c=2, n0=8, order=order, notes=notes)
    if k == "lattice":
        return _lattice_family(fid, n, order)
    raise FamilyError(f"unknown family {fid}")


def _code_family(fid: FamilyId, n: int, order: int) -> FamilyInstance:
    q, c = fid.q, fid.c
    g = series_mul(poly([0, 1]), _pow_poly([1, -1], c))
    cf = {"q": q, "c": c}
    if c == 1:
        s = _sqrt_int(q)
        lin = poly([1, s - 1])
        f, h, m, n0 = series_pow(lin, 2), series_pow(lin, n % 2), n // 2, 2
    elif (q, c) == (2, 2):
        if n % 2:
            raise FamilyError("code(2,2) needs even n")
        f, h, m, n0 = _pow_poly([1, 1], 4), _pow_poly([1, 1], (n // 2) % 4), n // 8, 8
    elif (q, c) == (2, 4):
        if n % 8:
            raise FamilyError("code(2,4) needs 8 | n")
        f, h, m, n0 = _pow_poly([1, 14, 1], 3), _pow_poly([1, 14, 1], (n // 8) % 3), n // 24, 24
    elif (q, c) == (3, 3):
        if n % 4:
            raise FamilyError("code(3,3) needs 4 | n")
        f, h, m, n0 = _pow_poly([1, 8], 3), _pow_poly([1, 8], (n // 4) % 3), n // 12, 12
    else:  # (4, 2)
        f, h, m, n0 = _pow_poly([1, 3], 3), _pow_poly([1, 3], (n // 2) % 3), n // 6, 6
    cf["n0"] = n0
    return FamilyInstance(fid, n, f=f, g=g, h=h, m=m, c=c, n0=n0, order=order, q=q,
                          closed_form=cf)


def _lattice_family(fid: FamilyId, n: int, order: int) -> FamilyInstance:
    N = fid.N
    n0 = lattice_period(N)
    g = eta_product_series(N, order)
    if N == 1:
        # Theta series of E8 = E4; not one of the computed examples, an extension.
        if n % 8:
            raise FamilyError("even unimodular lattices need 8 | n")
        e4 = e4_series(order - 1)
        return FamilyInstance(fid, n, f=series_pow(e4, 3), g=g,
                              h=series_pow(e4, (n // 8) % 3), m=n // 24, c=2, n0=24,
                              order=order, notes={"f": "E8 theta series cubed (external fact)"})
    return FamilyInstance(fid, n, f=None, g=g, h=None, m=n // n0, c=2, n0=n0, order=order,
                          notes={"f": "not exposed; only Lg data is used for this level"})


@dataclass
class PositivityReport:
    order: int
    f_ok: bool
    f_first_negative: tuple | None
    inv_g_ok: bool
    inv_g_first_negative: tuple | None

    @property
    def ok(self) -> bool:
        return self.f_ok and self.inv_g_ok


def positivity_audit(inst: FamilyInstance, order: int) -> PositivityReport:
    """Exact check of f >= 0 and 1/g >= 0 coefficientwise below ``order``."""
    fneg = None
    if inst.f is not None:
        f = inst.f if inst.f.order is None else inst.f.truncate(min(order, inst.f.order))
        fneg = f.first_negative(order if f.order is None else min(order, f.order))
    inv = series_reciprocal(inst.g, order=order if inst.g.order is None
                            else min(order, inst.g.order - 2))
    gneg = inv.first_negative()
    return PositivityReport(order, fneg is None, fneg, gneg is None, gneg)


def check_normalization(inst: FamilyInstance) -> bool:
    """f(0) = 1, h(0) = 1, v(g) = 1, g'(0) = 1."""
    ok = inst.g.valuation() == 1 and inst.g[1] == 1
    if inst.f is not None:
        ok = ok and inst.f[0] == 1 and inst.f.valuation() == 0
    if inst.h is not None:
        ok = ok and inst.h[0] == 1
    return ok


def describe(fid) -> dict:
    """Human-readable factored basis for ``families list``."""
    fid = parse_family(fid)
    k = fid.kind
    if k == "code":
        q, c = fid.q, fid.c
        if c == 1:
            s = f"sqrt({q})" if Quad.sqrt(q).__class__ is Quad else str(Quad.sqrt(q))
            return {"f": f"(1+({s}-1)t)^2", "g": "t(1-t)", "h": f"(1+({s}-1)t)^(n mod 2)",
                    "m": "[n/2]", "c": 1, "n0": 2}
        table = {
            (2, 2): ("(1+t)^4", "t(1-t)^2", "(1+t)^((n/2) mod 4)", "[n/8]", 8),
            (2, 4): ("(1+14t+t^2)^3", "t(1-t)^4", "(1+14t+t^2)^((n/8) mod 3)", "[n/24]", 24),
            (3, 3): ("(1+8t)^3", "t(1-t)^3", "(1+8t)^((n/4) mod 3)", "[n/12]", 12),
            (4, 2): ("(1+3t)^3", "t(1-t)^2", "(1+3t)^([n/2] mod 3)", "[n/6]", 6),
        }
        f, g, h, m, n0 = table[(q, c)]
        return {"f": f, "g": g, "h": h, "m": m, "c": c, "n0": n0}
    if k == "quantum":
        q = fid.q
        return {"f": f"(1+{q - 1}t)^2", "g": "t(1-t)", "h": f"1+{q - 1}t",
                "h2": f"1-{q + 1}t", "m": "(n-1)/2", "c": 1, "n0": 2}
    if k == "z4-type2":
        th = "(1+60t+134t^2+60t^3+t^4)"
        return {"f": th + "^3", "g": "t(1-t)^6(1-t^2)^2", "h": th + "^(n/8-3[n/24])",
                "m": "[n/24]", "c": 8, "n0": 24}
    if k == "z4-general":
        return {"f": "(1+t)^8", "g": "t(1+t^2)(1-t)^4", "h": "(1+t)^(n mod 8)",
                "m": "[n/8]", "c": 4, "n0": 8,
                "S": "(1+t)^([n/4] mod 2) sum (-1)^i (64t(1+t)^2)^([n/8]-i) ((1-t)^4/8)^i"}
    if k in ("binary-sd-shadow", "fsd-binary-shadow"):
        d = {"f": "(1+t)^4", "g": "t(1-t)^2", "h": "(1+t)^((n mod 8)/2)", "m": "[n/8]",
             "c": 2, "n0": 8}
        if k == "binary-sd-shadow":
            d["S"] = "2^((n mod 8)/2) sum c_i (16t)^([n/8]-i) (-(1-t)^2/4)^i"
        else:
            d["S"] = "A(y,x)"
            d["relation_m"] = "[n/4] (flagged, not derived)"
        return d
    N = fid.N
    d = {"g": f"prod_(d|{N}) eta(dz)^{24 // level_weight(N)}",
         "Lg": f"(24/{level_weight(N)}) E2^({N})", "c": 2, "n0": lattice_period(N)}
    if N == 1:
        d.update({"f": "E4^3 (E8 theta cubed)", "h": "E4^((n/8) mod 3)", "m": "[n/24]"})
    return d
