"""Angular wavefunctions of three coupled Dunkl oscillators on the unit sphere.

The sphere carries the coordinates (x, y, z) = (sin t cos f, sin t sin f, cos t).
Two bases live on it: Y_K^N(theta, phi), diagonalizing the (12) intermediate
Casimir, and Z_S^N(alpha, beta), the same functions with the parameters cycled
and the coordinates permuted so that they diagonalize the (23) Casimir.

Evaluation is done from trigonometric *values* (cos, sin) rather than angles.
That lets the same code run at the complex points used by the generating
function, where only the values of cos and sin are prescribed.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .bannai import BIParams
from .numcore import (
    NumericDomainError,
    PoleError,
    binom_general,
    factorial,
    gamma_ratio,
    gauss_jacobi,
    get_prec,
    hp_function,
    is_exact,
    like,
    sqrt_hp,
    to_hp,
)
from .racah import param_map

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class RacahContext:
    mu1: Fraction
    mu2: Fraction
    mu3: Fraction
    N: int
    bi: BIParams = field(init=False, repr=False, compare=False)
    mu: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("mu1", "mu2", "mu3"):
            v = Fraction(getattr(self, name))
            if v <= 0:
                raise ValueError(f"{name} must be positive, got {v}")
            object.__setattr__(self, name, v)
        if self.N < 0:
            raise ValueError(f"N must be non-negative, got {self.N}")
        bi, mu = param_map(self.mu1, self.mu2, self.mu3, self.N)
        object.__setattr__(self, "bi", bi)
        object.__setattr__(self, "mu", mu)

    @property
    def n(self) -> int:
        return self.N // 2

    @property
    def t(self) -> int:
        return self.N % 2

    @property
    def mus(self) -> tuple[Fraction, Fraction, Fraction]:
        return self.mu1, self.mu2, self.mu3

    def cycled(self) -> "RacahContext":
        """Parameters (mu1, mu2, mu3) -> (mu2, mu3, mu1)."""
        return RacahContext(self.mu2, self.mu3, self.mu1, self.N)


def jacobi(n: int, a, b, x):
    """Jacobi polynomial P_n^(a,b)(x); zero for negative degree.

    Exact when every argument is rational, otherwise evaluated in the
    arithmetic of ``x`` (mpf or mpc).
    """
    if n < 0:
        return like(x, 0)
    exact = is_exact(x) and is_exact(a) and is_exact(b)
    if exact:
        a, b, x = Fraction(a), Fraction(b), Fraction(x)
    else:
        a, b, x = to_hp(a), to_hp(b), to_hp(x)
    one = Fraction(1) if exact else to_hp(1)
    if n == 0:
        return one
    ab = a + b
    p0 = one
    p1 = (a - b) / 2 + (ab + 2) * x / 2
    for k in range(2, n + 1):
        c1 = 2 * k * (k + ab) * (2 * k + ab - 2)
        if c1 == 0:
            return _jacobi_sum(n, a, b, x)
        c2 = (2 * k + ab - 1) * ((2 * k + ab) * (2 * k + ab - 2) * x + a * a - b * b)
        c3 = 2 * (k + a - 1) * (k + b - 1) * (2 * k + ab)
        p0, p1 = p1, (c2 * p1 - c3 * p0) / c1
    return p1


def _jacobi_sum(n, a, b, x):
    xm = (x - 1) / 2
    xp = (x + 1) / 2
    return sum(binom_general(n + a, n - k) * binom_general(n + b, k) * xm**k * xp ** (n - k) for k in range(n + 1))


@dataclass(frozen=True)
class WaveNorms:
    A: mpmath.mpf
    B: mpmath.mpf
    xi_plus: mpmath.mpf
    xi_minus: mpmath.mpf
    E: mpmath.mpf
    F: mpmath.mpf


def _rational_power(q: Fraction, half_exponent: int):
    """q ** (half_exponent / 2) for half_exponent in {-1, 0, 1}."""
    if half_exponent == 0:
        return to_hp(1)
    r = sqrt_hp(q)
    return r if half_exponent > 0 else 1 / r


def wave_norms(ctx: RacahContext, K: int) -> WaveNorms:
    return _wave_norms(ctx.mu1, ctx.mu2, ctx.mu3, ctx.N, K, get_prec())


@functools.lru_cache(maxsize=4096)
def _wave_norms(m1, m2, m3, N, K, prec) -> WaveNorms:
    with mpmath.workdps(prec):
        n, t = divmod(N, 2)
        k, p = divmod(K, 2)
        m12 = m1 + m2
        A2 = factorial(n - k + p * (t - 1)) * gamma_ratio(
            [n + k + m12 + m3 + Fraction(3, 2) + p * t],
            [n + k + m12 + 1 + p * t, n - k + m3 + HALF + p * (t - 1)],
        )
        A = (-1) ** (t * K) * sqrt_hp(A2)
        B = _rational_power((n - k + m3 - HALF + t) / (n + k + m12 + 1), p - t)
        xp = sqrt_hp(factorial(k + p) * gamma_ratio([k + m12 + 1 + p], [k + m1 + HALF + p, k + m2 + HALF + p]) / 2)
        xm = sqrt_hp(factorial(k) * gamma_ratio([k + m12 + 1], [k + m1 + HALF, k + m2 + HALF]) / 2)
        E = _rational_power(Fraction(k + 1) / (k + m12 + 1), p)
        F = _rational_power((k + m1 + HALF) / (k + m2 + HALF), p)
        return WaveNorms(A=A, B=B, xi_plus=xp, xi_minus=xm, E=E, F=F)


@hp_function
def fK_trig(ctx: RacahContext, K: int, sign: int, c, s):
    """F_K^{+/-} as a function of (cos phi, sin phi)."""
    k, p = divmod(K, 2)
    m1, m2 = ctx.mu1, ctx.mu2
    w = wave_norms(ctx, K)
    c2 = c * c - s * s
    if sign > 0:
        return w.xi_plus * (
            w.E * jacobi(k + p, m2 - HALF, m1 - HALF, c2)
            - (-1) ** p / w.E * c * s * jacobi(k + p - 1, m2 + HALF, m1 + HALF, c2)
        )
    return w.xi_minus * (
        w.F * s * jacobi(k, m2 + HALF, m1 - HALF, c2) + (-1) ** p / w.F * c * jacobi(k, m2 - HALF, m1 + HALF, c2)
    )


@hp_function
def fK(ctx: RacahContext, K: int, sign: int, phi):
    if not 0 <= K <= ctx.N:
        raise ValueError(f"K={K} outside 0..{ctx.N}")
    phi = to_hp(phi)
    return mpmath.mpc(fK_trig(ctx, K, sign, mpmath.cos(phi), mpmath.sin(phi)))


@hp_function
def Y_trig(ctx: RacahContext, K: int, ct, st, cp, sp):
    """Y_K^N from (cos theta, sin theta, cos phi, sin phi)."""
    n, t = ctx.n, ctx.t
    k, p = divmod(K, 2)
    m12, m3 = ctx.mu1 + ctx.mu2, ctx.mu3
    w = wave_norms(ctx, K)
    c2t = ct * ct - st * st
    first = (
        w.B
        * ct**t
        * st ** (2 * k + 2 * p)
        * jacobi(n - k - p, 2 * k + 2 * p + m12, m3 - HALF + t, c2t)
        * fK_trig(ctx, K, +1, cp, sp)
    )
    second = (
        (-1) ** t
        / w.B
        * ct ** (1 - t)
        * st ** (2 * k + 1)
        * jacobi(n + t - k - 1, 2 * k + 1 + m12, m3 + HALF - t, c2t)
        * fK_trig(ctx, K, -1, cp, sp)
    )
    return w.A * (first + second)


@hp_function
def Y_eval(ctx: RacahContext, K: int, theta, phi):
    if not 0 <= K <= ctx.N:
        raise ValueError(f"K={K} outside 0..{ctx.N}")
    theta, phi = to_hp(theta), to_hp(phi)
    return Y_trig(ctx, K, mpmath.cos(theta), mpmath.sin(theta), mpmath.cos(phi), mpmath.sin(phi))


def sphere_point(theta, phi):
    theta, phi = to_hp(theta), to_hp(phi)
    st = mpmath.sin(theta)
    return st * mpmath.cos(phi), st * mpmath.sin(phi), mpmath.cos(theta)


@hp_function
def coord_map(theta, phi):
    """(theta, phi) -> (alpha, beta) for the cyclically permuted axes.

    sin(a)cos(b) = y, sin(a)sin(b) = z, cos(a) = x, with alpha in [0, pi].
    """
    x, y, z = sphere_point(theta, phi)
    sa = mpmath.hypot(y, z)
    alpha = mpmath.atan2(sa, x)
    if sa <= mpmath.mpf(10) ** (10 - get_prec()):
        err = PoleError(f"beta undefined at sin(alpha) = 0 (alpha = {mpmath.nstr(alpha, 8)})")
        err.alpha = alpha
        raise err
    return alpha, mpmath.atan2(z, y)


@hp_function
def Z_trig(ctx: RacahContext, S: int, ca, sa, cb, sb):
    """Z_S^N from (cos alpha, sin alpha, cos beta, sin beta)."""
    if ctx.N % 2 == 0:
        ca = -ca
    return Y_trig(ctx.cycled(), S, ca, sa, cb, sb)


@hp_function
def Z_eval(ctx: RacahContext, S: int, alpha, beta):
    if not 0 <= S <= ctx.N:
        raise ValueError(f"S={S} outside 0..{ctx.N}")
    alpha, beta = to_hp(alpha), to_hp(beta)
    a = mpmath.pi - alpha if ctx.N % 2 == 0 else alpha
    return Y_eval(ctx.cycled(), S, a, beta)


@hp_function
def sphere_gram(ctx: RacahContext, order: int | None = None):
    """G[K][K'] = integral of Y_K Y_K' against |x|^2mu1 |y|^2mu2 |z|^2mu3 dOmega.

    Tensor Gauss-Jacobi rule in u = cos 2theta, v = cos 2phi on the first
    octant, summed over the eight sign patterns of (x, y, z).
    """
    if order is None:
        order = 2 * ctx.N + 20
    m1, m2, m3 = ctx.mus
    if min(m1, m2, m3) <= 0:
        raise NumericDomainError("measure exponents must be positive")
    us, wus = gauss_jacobi(order, m1 + m2, m3 - HALF)
    vs, wvs = gauss_jacobi(order, m2 - HALF, m1 - HALF)
    scale = (
        mpmath.mpf(2) ** -(to_hp(m1 + m2) + to_hp(m3) - HALF) / 4 * mpmath.mpf(2) ** -(to_hp(m1 + m2) - 1) / 4
    )
    size = ctx.N + 1
    G = mpmath.zeros(size, size)
    signs = [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    for u, wu in zip(us, wus):
        ct0, st0 = mpmath.sqrt((1 + u) / 2), mpmath.sqrt((1 - u) / 2)
        for v, wv in zip(vs, wvs):
            cp0, sp0 = mpmath.sqrt((1 + v) / 2), mpmath.sqrt((1 - v) / 2)
            wt = wu * wv * scale
            for sx, sy, sz in signs:
                vals = [Y_trig(ctx, K, sz * ct0, st0, sx * cp0, sy * sp0) for K in range(size)]
                for i in range(size):
                    for j in range(i, size):
                        G[i, j] += wt * vals[i] * vals[j]
    for i in range(size):
        for j in range(i):
            G[i, j] = G[j, i]
    return G
