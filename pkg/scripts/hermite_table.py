#!/usr/bin/env python3
"""Second-order coefficients C sqrt(C3') x0^(k) for the code families."""

import argparse

import mpmath

from sdbounds.hermite import second_order_bound

FAMILIES = ["code-2-4", "code-3-3", "code-4-2", "code-2-2", "code-2-1"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()
    print("family\tk\tx0\tC\tcoefficient\thypothesis_ok")
    for tag in FAMILIES:
        for k in range(1, args.kmax + 1):
            b = second_order_bound(tag, k, args.prec)
            c = "" if b.C is None else mpmath.nstr(b.C, 8)
            coef = "" if b.bound_coefficient is None else mpmath.nstr(b.bound_coefficient, 8)
            print(f"{tag}\t{k}\t{mpmath.nstr(b.x0, 8)}\t{c}\t{coef}\t{b.hypothesis_ok}")


if __name__ == "__main__":
    main()
