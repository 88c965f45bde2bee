#!/usr/bin/env python3
"""Relative error of the k-term saddle expansion against exact coefficients."""

import argparse
from fractions import Fraction

import mpmath

from sdbounds.saddle import binomial_case, higher_order_estimate, rational_function

CASES = {
    # G, r chosen so that S(r) n is an integer along the n grid
    "binomial": (binomial_case(), Fraction(1, 3), [60, 120, 240, 480]),
    "code-2-4": (rational_function([1], [1, -4, 6, -4, 1]), Fraction(1, 10), [45, 90, 180, 360]),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--case", choices=sorted(CASES), default="binomial")
    ap.add_argument("--kmax", type=int, default=4)
    args = ap.parse_args()
    G, r, ns = CASES[args.case]
    F = rational_function([1])
    print("n\t" + "\t".join(f"k={k}" for k in range(1, args.kmax + 1)))
    for n in ns:
        errs = [higher_order_estimate(F, G, r, n, k).relative_error
                for k in range(1, args.kmax + 1)]
        print(f"{n}\t" + "\t".join(mpmath.nstr(e, 3) for e in errs))


if __name__ == "__main__":
    main()
