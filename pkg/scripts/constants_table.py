#!/usr/bin/env python3
"""Scaled asymptotic bounds for every registered family, next to the printed values."""

import argparse
import time

import mpmath

from sdbounds.constants import (REMARK_CODES, REMARK_LATTICES, REMARK_Z4, asymptotic_bound)
from sdbounds.families import registered_families


def reference(tag):
    if tag in REMARK_CODES:
        return REMARK_CODES[tag]
    if tag.startswith("lattice-"):
        return REMARK_LATTICES[int(tag.split("-")[1])]
    if tag in ("z4-type2", "z4-general"):
        return REMARK_Z4
    return ""


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prec", type=int, default=128)
    args = ap.parse_args()
    print("family\tbound\tbound_err\treference\tdiff\tseconds")
    for fid in registered_families():
        t = time.perf_counter()
        ac = asymptotic_bound(fid, args.prec)
        dt = time.perf_counter() - t
        ref = reference(fid.tag)
        diff = mpmath.nstr(abs(ac.bound - mpmath.mpf(ref)), 3) if ref else ""
        print(f"{fid.tag}\t{mpmath.nstr(ac.bound, 15)}\t{mpmath.nstr(ac.bound_err, 3)}\t"
              f"{ref}\t{diff}\t{dt:.2f}")


if __name__ == "__main__":
    main()
