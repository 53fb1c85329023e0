#!/usr/bin/env python3
"""Evaluate every reading of the disentangled generating function.

Prints, for each flag combination, the worst relative coefficient error over
N = 1..nmax and the three validation triples, then the selected combination.
"""

import argparse
from fractions import Fraction

import mpmath

from biracah.genfun import all_flags, select_flags, verify_identity
from biracah.numcore import precision
from biracah.spherewave import RacahContext

TRIPLES = [
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4), Fraction(1)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(5, 4)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--prec", type=int, default=40)
    args = ap.parse_args()
    ctxs = [RacahContext(*mus, N) for mus in TRIPLES for N in range(1, args.nmax + 1)]
    with precision(args.prec):
        for flags in all_flags():
            worst = mpmath.mpf(0)
            for ctx in ctxs:
                for c in verify_identity(ctx, flags).per_check:
                    worst = max(worst, mpmath.mpf(c.max_rel_err) if c.max_rel_err != "inf" else mpmath.inf)
            print(f"{flags}: worst relative error {mpmath.nstr(worst, 3)}")
        print("selected:", select_flags(ctxs))


if __name__ == "__main__":
    main()
