"""Bannai-Ito polynomials in exact rational arithmetic.

The finite family B_0, ..., B_N is fixed by four parameters and one of the
two truncation conditions

    N even:  2 (r2 - rho1) = N + 1
    N odd:   rho1 + rho2   = -(N + 1) / 2

and is orthogonal on the grid x_S, S = 0..N, against the weights w_S.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .numcore import NumericDomainError, pochhammer

HALF = Fraction(1, 2)


class BIParamError(ValueError):
    """Parameters violate a truncation condition or give a degenerate family."""


class SingularPointError(NumericDomainError):
    pass


@dataclass(frozen=True)
class BIParams:
    rho1: Fraction
    rho2: Fraction
    r1: Fraction
    r2: Fraction
    N: int

    def __post_init__(self):
        for name in ("rho1", "rho2", "r1", "r2"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        N = self.N
        if N < 0:
            raise BIParamError(f"N must be non-negative, got {N}")
        if N % 2 == 0 and 2 * (self.r2 - self.rho1) != N + 1:
            raise BIParamError(
                f"truncation condition 2(r2 - rho1) = N + 1 violated for even N={N}: "
                f"2(r2 - rho1) = {2 * (self.r2 - self.rho1)}"
            )
        if N % 2 == 1 and self.rho1 + self.rho2 != Fraction(-(N + 1), 2):
            raise BIParamError(
                f"truncation condition rho1 + rho2 = -(N + 1)/2 violated for odd N={N}: "
                f"rho1 + rho2 = {self.rho1 + self.rho2}"
            )
        g = self.rho1 + self.rho2 - self.r1 - self.r2
        for n in range(1, N + 1):
            if n + g == 0 or n + g + 1 == 0:
                raise BIParamError(f"recurrence denominator vanishes at n={n}")
        xs = [grid(self, S) for S in range(N + 1)]
        if len(set(xs)) != len(xs):
            raise BIParamError("grid points x_S are not pairwise distinct")

    @property
    def gap(self) -> Fraction:
        return self.rho1 + self.rho2 - self.r1 - self.r2


def recurrence_coeffs(p: BIParams, n: int) -> tuple[Fraction, Fraction]:
    """The pair (a_n, c_n) of the three-term recurrence."""
    rho1, rho2, r1, r2 = p.rho1, p.rho2, p.r1, p.r2
    g = p.gap
    if n + g + 1 == 0 or (n > 0 and n + g == 0):
        raise NumericDomainError(f"recurrence denominator vanishes at n={n}")
    if n % 2 == 0:
        a = (n + 2 * rho1 - 2 * r1 + 1) * (n + 2 * rho1 - 2 * r2 + 1) / (4 * (n + g + 1))
        c = Fraction(0) if n == 0 else -n * (n - 2 * r1 - 2 * r2) / (4 * (n + g))
    else:
        a = (n + 2 * rho1 + 2 * rho2 - 2 * r1 - 2 * r2 + 1) * (n + 2 * rho1 + 2 * rho2 + 1) / (4 * (n + g + 1))
        c = -(n + 2 * rho2 - 2 * r2) * (n + 2 * rho2 - 2 * r1) / (4 * (n + g))
    return a, c


def bi_values(p: BIParams, n: int, x) -> list:
    """[B_0(x), ..., B_n(x)] from the recurrence."""
    vals = [Fraction(1)]
    prev = Fraction(0)
    a_prev = Fraction(0)
    for j in range(n):
        a, c = recurrence_coeffs(p, j)
        nxt = (x - (p.rho1 - a - c)) * vals[-1] - a_prev * c * prev
        prev = vals[-1]
        vals.append(nxt)
        a_prev = a
    return vals


def bi_eval(p: BIParams, n: int, x) -> Fraction:
    if not 0 <= n <= p.N:
        raise ValueError(f"degree {n} outside 0..{p.N}")
    return bi_values(p, n, x)[-1]


def bi_coeffs(p: BIParams, n: int) -> list[Fraction]:
    """Coefficients of B_n in increasing powers of x."""
    prev: list[Fraction] = []
    cur = [Fraction(1)]
    a_prev = Fraction(0)
    for j in range(n):
        a, c = recurrence_coeffs(p, j)
        shift = p.rho1 - a - c
        nxt = [Fraction(0)] * (len(cur) + 1)
        for i, v in enumerate(cur):
            nxt[i + 1] += v
            nxt[i] -= shift * v
        for i, v in enumerate(prev):
            nxt[i] -= a_prev * c * v
        prev, cur, a_prev = cur, nxt, a
    return cur


def poly_eval(coeffs: Sequence, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def eigenvalue(p: BIParams, n: int) -> Fraction:
    if n % 2 == 0:
        return Fraction(n, 2)
    return p.r1 + p.r2 - p.rho1 - p.rho2 - Fraction(n + 1, 2)


ShiftOrder = Literal["PD", "DP"]


def bi_operator_apply(
    p: BIParams,
    f: Sequence | Callable,
    x,
    order: ShiftOrder = "PD",
):
    """Apply the Dunkl-shift operator diagonalized by the B_n to ``f`` at ``x``.

    ``f`` is a callable or a coefficient list. ``order="PD"`` reads the
    reflection-shift term as (P_x D_x f)(x) = f(-x-1); ``"DP"`` gives f(1-x).
    """
    x = Fraction(x) if isinstance(x, int) else x
    if x == 0 or x == -HALF:
        raise SingularPointError(f"operator is singular at x={x}")
    fn = f if callable(f) else (lambda y: poly_eval(f, y))
    shifted = fn(-x - 1) if order == "PD" else fn(1 - x)
    fx = fn(x)
    return (x - p.rho1) * (x - p.rho2) / (2 * x) * (fx - fn(-x)) + (
        (x - p.r1 + HALF) * (x - p.r2 + HALF) / (2 * x + 1)
    ) * (shifted - fx)


def select_operator_order(params: Sequence[BIParams], samples: Sequence[Fraction]) -> ShiftOrder:
    """Pick the composition order under which B_1 is an eigenfunction."""
    passing = []
    for order in ("PD", "DP"):
        ok = True
        for p in params:
            if p.N < 1:
                continue
            lam = eigenvalue(p, 1)
            B1 = bi_coeffs(p, 1)
            for x in samples:
                if bi_operator_apply(p, B1, x, order) != lam * poly_eval(B1, x):
                    ok = False
                    break
        if ok:
            passing.append(order)
    if len(passing) != 1:
        raise RuntimeError(f"operator order not uniquely determined: {passing}")
    return passing[0]


def grid(p: BIParams, S: int) -> Fraction:
    sgn = 1 if S % 2 == 0 else -1
    return (sgn * (S + 2 * p.rho1 + HALF) - HALF) / 2


def weight(p: BIParams, S: int) -> Fraction:
    """Orthogonality weight w_S, normalized so that w_0 = 1."""
    if not 0 <= S <= p.N:
        raise ValueError(f"grid index {S} outside 0..{p.N}")
    s, q = divmod(S, 2)
    rho1, rho2, r1, r2 = p.rho1, p.rho2, p.r1, p.r2
    num = (
        pochhammer(rho1 - r1 + HALF, s + q)
        * pochhammer(rho1 - r2 + HALF, s + q)
        * pochhammer(rho1 + rho2 + 1, s)
        * pochhammer(2 * rho1 + 1, s)
    )
    den = (
        pochhammer(rho1 + r1 + HALF, s + q)
        * pochhammer(rho1 + r2 + HALF, s + q)
        * pochhammer(Fraction(1), s)
        * pochhammer(rho1 - rho2 + 1, s)
    )
    if den == 0:
        raise NumericDomainError(f"degenerate measure: weight denominator vanishes at S={S}")
    return (-1) ** q * num / den


def weights(p: BIParams) -> list[Fraction]:
    return [weight(p, S) for S in range(p.N + 1)]


def h_norm(p: BIParams) -> Fraction:
    """Total mass h_N of the weights in closed form."""
    N, rho1, rho2, r1, r2 = p.N, p.rho1, p.rho2, p.r1, p.r2
    if N % 2 == 0:
        m = N // 2
        num = pochhammer(2 * rho1 + 1, m) * pochhammer(r1 - rho2 + HALF, m)
        den = pochhammer(rho1 - rho2 + 1, m) * pochhammer(rho1 + r1 + HALF, m)
    else:
        m = (N + 1) // 2
        num = pochhammer(2 * rho1 + 1, m) * pochhammer(r1 + r2, m)
        den = pochhammer(rho1 + r1 + HALF, m) * pochhammer(rho1 + r2 + HALF, m)
    if den == 0:
        raise NumericDomainError("degenerate measure: h_N denominator vanishes")
    return num / den


def value_table(p: BIParams) -> list[list[Fraction]]:
    """table[n][S] = B_n(x_S)."""
    cols = [bi_values(p, p.N, grid(p, S)) for S in range(p.N + 1)]
    return [[cols[S][n] for S in range(p.N + 1)] for n in range(p.N + 1)]


def gram_matrix(p: BIParams) -> list[list[Fraction]]:
    """G[n][m] = sum_S w_S B_n(x_S) B_m(x_S), exactly."""
    tab = value_table(p)
    w = weights(p)
    size = p.N + 1
    return [
        [sum((w[S] * tab[n][S] * tab[m][S] for S in range(size)), Fraction(0)) for m in range(size)]
        for n in range(size)
    ]


@dataclass(frozen=True)
class NormReport:
    n: int
    direct: Fraction
    h_N: Fraction
    closed_form: Fraction

    @property
    def matches_closed_form(self) -> bool:
        return self.direct == self.closed_form

    @property
    def matches_constant_h(self) -> bool:
        return self.direct == self.h_N


def norm(p: BIParams, n: int) -> NormReport:
    """Squared norm of B_n by direct summation, next to h_N and h_N * u_1...u_n."""
    from .racah import u_product

    if not 0 <= n <= p.N:
        raise ValueError(f"degree {n} outside 0..{p.N}")
    direct = sum(
        (weight(p, S) * bi_eval(p, n, grid(p, S)) ** 2 for S in range(p.N + 1)),
        Fraction(0),
    )
    h = h_norm(p)
    return NormReport(n=n, direct=direct, h_N=h, closed_form=h * u_product(p, n))
