#!/usr/bin/env python3
"""Compare the three candidate u-products against exact squared norms.

For each context, print whether sum_S w_S B_n(x_S)^2 equals h_N * prod u_i
for each candidate rule, and the Racah orthonormality residual it produces.
"""

import argparse
from fractions import Fraction

import mpmath

from biracah.bannai import gram_matrix, h_norm
from biracah.numcore import NumericDomainError, precision
from biracah.racah import racah_matrix, u_product
from biracah.spherewave import RacahContext

RULES = ("a_prev_c", "a_c", "a_prev_c_prev")
TRIPLES = [
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4), Fraction(1)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(5, 4)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=6)
    ap.add_argument("--prec", type=int, default=40)
    args = ap.parse_args()
    with precision(args.prec):
        for mus in TRIPLES:
            for N in range(1, args.nmax + 1):
                ctx = RacahContext(*mus, N)
                G = gram_matrix(ctx.bi)
                h = h_norm(ctx.bi)
                parts = []
                for rule in RULES:
                    norms_ok = all(G[n][n] == h * u_product(ctx.bi, n, rule) for n in range(N + 1))
                    try:
                        res = mpmath.nstr(racah_matrix(ctx, u_rule=rule).residual, 3)
                    except NumericDomainError as exc:
                        res = type(exc).__name__
                    parts.append(f"{rule}: norms={'exact' if norms_ok else 'no'} residual={res}")
                print(f"{mus} N={N}: " + "; ".join(parts))


if __name__ == "__main__":
    main()
