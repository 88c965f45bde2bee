#!/usr/bin/env python3
"""Finite-n certified bounds d_bound/n along a doubling sequence of lengths."""

import argparse
import time

import mpmath

from sdbounds.certify import certify_scan
from sdbounds.constants import asymptotic_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="code-2-4")
    ap.add_argument("--start", type=int, default=600)
    ap.add_argument("--steps", type=int, default=6)
    ap.add_argument("--grid", type=int, default=8)
    args = ap.parse_args()
    limit = asymptotic_bound(args.family).bound
    print(f"# limit {mpmath.nstr(limit, 12)}")
    print("n\tm\tt3\tD\td_bound\td/n\tgap\tseconds")
    n = args.start
    for _ in range(args.steps):
        t = time.perf_counter()
        c = certify_scan(args.family, n, k=args.grid)
        dt = time.perf_counter() - t
        print(f"{n}\t{c.m}\t{c.t3}\t{c.D}\t{c.d_bound}\t{c.ratio:.6f}\t"
              f"{c.ratio - float(limit):+.6f}\t{dt:.2f}")
        n *= 2


if __name__ == "__main__":
    main()
