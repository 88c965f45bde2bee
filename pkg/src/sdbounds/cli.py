"""Command-line entry point.  Every subcommand prints one JSON document
(or TSV rows with --tsv).  Exit codes: 0 ok, 1 precondition failure, 2 usage."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .families import FamilyError, describe, parse_family, registered_families

SCHEMA = 1


@dataclass
class RunConfig:
    precision_bits: int = 128
    series_order: int | None = None
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if self.precision_bits < 53:
            raise ValueError("precision must be at least 53 bits")


def _family(text: str):
    try:
        return parse_family(text)
    except FamilyError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _plain(x):
    """JSON-friendly, deterministic rendering."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (mpmath.mpf, mpmath.mpc, float)):
        return mpmath.nstr(x, 25)
    return str(x)


def _emit(cfg: RunConfig, payload: dict, rows: list[dict] | None = None):
    if cfg.output == "tsv" and rows:
        keys = list(dict.fromkeys(k for r in rows for k in r))
        print("\t".join(keys))
        for r in rows:
            print("\t".join(str(_plain(r.get(k, ""))) for k in keys))
        return
    payload = {"schema": SCHEMA, **payload}
    print(json.dumps(_plain(payload), sort_keys=True, indent=1))


# -- subcommands -----------------------------------------------------------------

def cmd_families(args, cfg):
    rows = [{"family": f.tag, **describe(f)} for f in registered_families()]
    _emit(cfg, {"families": rows}, rows)


def cmd_constants(args, cfg):
    from .constants import asymptotic_bound, z4_polynomial_check
    fams = registered_families() if args.all else [args.family]
    if not fams or fams == [None]:
        raise UsageError("give --family or --all")
    out = [asymptotic_bound(f, cfg.precision_bits).to_json() for f in fams]
    payload = {"constants": out} if args.all else dict(out[0])
    if args.all or args.family.kind == "z4-type2":
        payload["z4_polynomial_check"] = z4_polynomial_check(cfg.precision_bits)
    rows = [{"family": o["family"], "bound": o["bound"], "bound_err": o["bound_err"]} for o in out]
    _emit(cfg, payload, rows)


def cmd_extremal(args, cfg):
    from .extremal import extremal_table
    res = extremal_table(args.family, args.n, args.scan_order or cfg.series_order)
    rows = [r.row() for r in res]
    _emit(cfg, {"family": args.family.tag, "rows": rows,
                **({"d_ext": rows[0]["d_ext"]} if len(rows) == 1 else {})}, rows)


def cmd_relation(args, cfg):
    from .certify import relation_instance
    from .lagrange import relation_vector_pair
    inst = relation_instance(args.family, args.n)
    rv = relation_vector_pair(inst, args.t3)
    rows = [{"j": j, "value": v} for j, v in enumerate(rv.values)]
    _emit(cfg, {"relation": rv.to_json()}, rows)


def cmd_certify(args, cfg):
    from .certify import certify_scan
    cert = certify_scan(args.family, args.n, args.t3 or None, args.grid)
    d = cert.to_json()
    _emit(cfg, {"certificate": d, "d_over_n": float(Fraction(cert.d_bound, cert.n))},
          [{"n": cert.n, "t3": d["t3"], "D": cert.D, "d_bound": cert.d_bound}])


def cmd_hermite(args, cfg):
    from .hermite import second_order_bound
    res = [second_order_bound(args.family, k, cfg.precision_bits).to_json() for k in args.k]
    _emit(cfg, {"family": args.family.tag, "rows": res}, res)


def cmd_saddle(args, cfg):
    from . import saddle as sd
    one = sd.rational_function([1])
    r = _rational(args.r) if args.r else None
    if args.case == "binomial":
        G, r = sd.binomial_case(), r or Fraction(1, 3)
    elif args.case == "code-2-4":
        G, r = sd.rational_function([1], [1, -4, 6, -4, 1]), r or Fraction(1, 10)
    else:
        G, r0 = sd.binomial_case(), r or Fraction(1, 3)
        F = sd.rational_function([-r0, 1])
        step = Fraction(1, 100)
        grid = [r0 + (j - Fraction(11, 2)) * step for j in range(12)]
        rep = sd.hermite_profile_check(F, G, r0, 1, args.n, grid, cfg.precision_bits)
        rows = [{k: v for k, v in row.items()} for row in rep.rows]
        _emit(cfg, {"case": args.case, "n": args.n, "flip_between": rep.flip_between,
                    "flip_ok": rep.flip_ok, "rows": rows}, rows)
        return
    reps = [sd.higher_order_estimate(one, G, r, args.n, k, cfg.precision_bits).to_json()
            for k in range(1, args.k + 1)]
    mod = sd.modulus_bound_check(G, r, seed=cfg.seed)
    _emit(cfg, {"case": args.case, "reports": reps, "modulus_bound": mod}, reps)


def cmd_shadow(args, cfg):
    from . import shadow as sh
    if args.n is None and not (args.theorem == "quantq" and args.m is not None):
        raise UsageError(f"--n is required for {args.theorem}")
    if args.theorem == "codes1":
        rep = sh.codes1_relation_report(args.n, args.m)
        payload = {"n": rep.n, "m": rep.m, "K": str(rep.K),
                   "s_side_all_nonpositive": rep.s_side_all_nonpositive,
                   "a_side_positive_on_grid": rep.a_side_positive_on_grid,
                   "t0_prime": rep.t0_prime, "a_side_slope_at_t0": rep.a_side_slope_at_t0,
                   "a_side_coefficients_negative": rep.a_side_coefficients_negative}
    elif args.theorem == "quantq":
        m = args.m if args.m is not None else (args.n - 1) // 2
        s = sh.quantum_relation_scan(args.q, m)
        payload = {"q": s.q, "m": s.m, "threshold": s.threshold,
                   "threshold_ratio": s.threshold_ratio, "target": str(s.target),
                   "c_side_negative": s.c_side_negative, "relation_check": s.relation_check}
    else:
        p = sh.z4_general_bases(args.n)
        payload = {"n": p.n, "M": p.M, "audit": p.audit,
                   "A_terms": [t.to_json() for t in p.A_terms],
                   "S_terms": [t.to_json() for t in p.S_terms]}
    _emit(cfg, {"theorem": args.theorem, **payload}, [payload])


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=128, help="working precision in bits")
    common.add_argument("--order", type=int, default=None, help="series truncation order")
    common.add_argument("--seed", type=int, default=0)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json")
    fmt.add_argument("--tsv", dest="output", action="store_const", const="tsv")
    common.set_defaults(output="json")

    p = argparse.ArgumentParser(prog="sdbounds", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("families", parents=[common], help="list registered families")
    s.add_argument("action", nargs="?", default="list", choices=["list"])
    s.set_defaults(func=cmd_families)

    s = sub.add_parser("constants", parents=[common], help="asymptotic constants")
    s.add_argument("--family", type=_family)
    s.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("extremal", parents=[common], help="extremal enumerator distance")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--n", type=int, nargs="+", required=True)
    s.add_argument("--scan-order", type=int, default=None)
    s.set_defaults(func=cmd_extremal)

    s = sub.add_parser("relation", parents=[common], help="relation vector c_{m+2} - r c_{m+1}")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t3", type=_rational, required=True)
    s.set_defaults(func=cmd_relation)

    s = sub.add_parser("certify", parents=[common], help="finite-n certified bound")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t3", type=_rational, nargs="*", default=None)
    s.add_argument("--grid", type=int, default=8, help="size of the default t3 grid")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("hermite-bound", parents=[common], help="second-order constants")
    s.add_argument("--family", type=_family, required=True)
    s.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    s.set_defaults(func=cmd_hermite)

    s = sub.add_parser("validate-saddle", parents=[common], help="saddle-point validation")
    s.add_argument("--case", choices=["binomial", "code-2-4", "profile"], default="binomial")
    s.add_argument("--n", type=int, default=60)
    s.add_argument("--k", type=int, default=3)
    s.add_argument("--r", default=None)
    s.set_defaults(func=cmd_saddle)

    s = sub.add_parser("shadow", parents=[common], help="shadow and quantum relations")
    s.add_argument("--theorem", choices=["codes1", "quantq", "z4e1"], required=True)
    s.add_argument("--n", type=int, default=None, help="length (quantq: n = 2m + 1)")
    s.add_argument("--q", type=int, default=2)
    s.add_argument("--m", type=int, default=None)
    s.set_defaults(func=cmd_shadow)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(args.prec, args.order, args.output, args.seed)
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        with mpmath.workprec(cfg.precision_bits):
            args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(json.dumps({"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
