#!/usr/bin/env python3
"""Run every verification suite over the validation grid and print a table."""

import argparse
import time
from fractions import Fraction

from biracah import verify
from biracah.numcore import precision
from biracah.spherewave import RacahContext

TRIPLES = [
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4), Fraction(1)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(5, 4)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--prec", type=int, default=60)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    cfg = verify.VerifyConfig(seed=args.seed)
    failed = 0
    with precision(args.prec):
        print(f"{'mu':<16} {'N':>2}  " + "  ".join(f"{s:<13}" for s in verify.SUITES) + "  time")
        for mus in TRIPLES:
            for N in range(args.nmax + 1):
                ctx = RacahContext(*mus, N)
                cells = []
                t0 = time.perf_counter()
                for suite in verify.SUITES:
                    r = verify.run(suite, ctx, cfg)
                    failed += not r.passed
                    cells.append(f"{'ok' if r.passed else 'FAIL':<13}")
                label = ",".join(str(m) for m in mus)
                print(f"{label:<16} {N:>2}  " + "  ".join(cells) + f"  {time.perf_counter() - t0:.2f}s")
    print(f"{failed} failing suite runs")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
