#!/usr/bin/env python3
"""Positivity threshold j*/m of the quantum C - D relation against 1 - 1/q^2."""

import argparse

from sdbounds.shadow import quantum_relation_scan


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--m", type=int, nargs="+", default=[50, 100, 200, 400, 800])
    args = ap.parse_args()
    print("q\tm\tj*\tj*/m\ttarget\tm*gap\tcross_check")
    for q in args.q:
        for m in args.m:
            s = quantum_relation_scan(q, m)
            gap = s.threshold - float(s.target) * m
            print(f"{q}\t{m}\t{s.threshold}\t{s.threshold_ratio:.4f}\t{float(s.target):.4f}\t"
                  f"{gap:+.2f}\t{s.relation_check}")


if __name__ == "__main__":
    main()
