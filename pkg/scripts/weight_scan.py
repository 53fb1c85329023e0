#!/usr/bin/env python3
"""Recover the orthogonality weights by solving the exact linear system.

The weights are fixed up to scale by sum_S w_S B_n(x_S) = 0 for n = 1..N.
The script solves that system with w_0 = 1 and prints the ratio of the
solution to the shipped closed form, and to the closed form without the
(2 rho1 + 1)_s factor.
"""

import argparse
from fractions import Fraction

from biracah.bannai import value_table, weight
from biracah.numcore import pochhammer
from biracah.spherewave import RacahContext

TRIPLES = [
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4), Fraction(1)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(5, 4)),
]


def solve(A, b):
    """Exact Gauss-Jordan elimination over the rationals."""
    n = len(A)
    M = [row[:] + [v] for row, v in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def recovered_weights(p):
    tab = value_table(p)
    N = p.N
    # unknowns w_1..w_N; equations n = 1..N
    A = [[tab[n][S] for S in range(1, N + 1)] for n in range(1, N + 1)]
    b = [-tab[n][0] for n in range(1, N + 1)]
    return [Fraction(1)] + solve(A, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=8)
    args = ap.parse_args()
    for mus in TRIPLES:
        for N in range(1, args.nmax + 1):
            p = RacahContext(*mus, N).bi
            w = recovered_weights(p)
            shipped = [w[S] / weight(p, S) for S in range(N + 1)]
            without = [w[S] / (weight(p, S) / pochhammer(2 * p.rho1 + 1, S // 2)) for S in range(N + 1)]
            ok = all(r == 1 for r in shipped)
            print(f"{mus} N={N}: shipped form {'exact' if ok else 'MISMATCH'}; ratio without factor = {[str(r) for r in without]}")


if __name__ == "__main__":
    main()
