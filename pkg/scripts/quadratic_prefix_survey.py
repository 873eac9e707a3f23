#!/usr/bin/env python3
"""Finite-depth exclusion survey for simple quadratic irrationals [n,n,...].

For each n the interval of reals whose continued fraction starts with k
copies of n is intersected against the level-d structure of the
middle-third set.  A "disjoint at depth d" verdict proves every number
with that prefix (in particular [n,n,n,...]) misses the set's depth-d
cover; longer prefixes give sharper intervals.  Verdicts here are
finite-depth only: no limit claim is made.

Writes a CSV table to stdout or --out.
"""

import argparse
import sys

from cantorapprox import (MissingDigitSet, cf_prefix_interval,
                          prefix_interval_disjoint_from)


def survey(n_max: int, prefix_len: int, depth_max: int):
    dset = MissingDigitSet.middle_thirds()
    rows = []
    for n in range(1, n_max + 1):
        pi = cf_prefix_interval([n] * prefix_len)
        first = None
        for depth in range(1, depth_max + 1):
            if prefix_interval_disjoint_from(pi, dset, depth):
                first = depth
                break
        rows.append({
            "n": n,
            "prefix_len": prefix_len,
            "lo": f"{pi.lo.numerator}/{pi.lo.denominator}",
            "hi": f"{pi.hi.numerator}/{pi.hi.denominator}",
            "first_disjoint_depth": first if first is not None else "none",
        })
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--prefix-len", type=int, default=4)
    ap.add_argument("--depth-max", type=int, default=10)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    rows = survey(args.nmax, args.prefix_len, args.depth_max)
    lines = ["n,prefix_len,lo,hi,first_disjoint_depth"]
    lines += [",".join(str(r[k]) for k in
                       ("n", "prefix_len", "lo", "hi", "first_disjoint_depth"))
              for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
