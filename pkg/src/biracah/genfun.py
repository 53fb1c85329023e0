"""Generating functions in the complex variable z.

The (23)-coupled wavefunction Z_S^N, written in z, is a finite Racah-weighted
sum of asymptotic (12)-coupled wavefunctions, each a sum of two monomials.
Rotating by e^{i pi/4} and taking the real part keeps one monomial per K, so

    Ztilde_S(z) = sum_K R[S][K] * C_K * z^K.

This module evaluates both sides and checks the identity coefficient by
coefficient after expanding Ztilde_S in powers of z.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Literal

import mpmath

from .numcore import (
    NumericDomainError,
    PoleError,
    binom_general,
    factorial,
    gamma_ratio,
    get_prec,
    hp_function,
    sqrt_hp,
    to_hp,
)
from .racah import URule, racah_matrix
from .report import Check, VerifyReport, context_dict
from .spherewave import HALF, RacahContext, jacobi, wave_norms

LPower = Literal["1-t+u", "t+u+1"]
DampingScope = Literal["u_term", "both"]


class IllConditionedError(NumericDomainError):
    """The polynomial fit does not reproduce its samples."""


def psi_exact(k: int, p: int, mu1, mu2, sign: int) -> tuple[Fraction, Fraction]:
    """Phase factor Psi_+/- as an exact (real, imaginary) pair."""
    mu1, mu2 = Fraction(mu1), Fraction(mu2)
    m12 = mu1 + mu2
    if sign > 0:
        ratio = Fraction(k + p) / (k + p + m12) * ((k + m12 + 1) / Fraction(k + 1)) ** p
        return Fraction(1), -((-1) ** p) * ratio
    ratio = ((k + mu2 + HALF) / (k + mu1 + HALF)) ** p
    return (-1) ** p * ratio, Fraction(1)


@hp_function
def psi(k: int, p: int, mu1, mu2, sign: int) -> mpmath.mpc:
    re, im = psi_exact(k, p, mu1, mu2, sign)
    return mpmath.mpc(to_hp(re), to_hp(im))


@hp_function
def disentangle(v) -> mpmath.mpf:
    """Re(e^{i pi/4} v)."""
    return mpmath.re(mpmath.expjpi(mpmath.mpf(1) / 4) * v)


@hp_function
def monomial_coeff(ctx: RacahContext, K: int) -> mpmath.mpf:
    """Coefficient C_K of z^K in the disentangled asymptotic wavefunction."""
    if not 0 <= K <= ctx.N:
        raise ValueError(f"K={K} outside 0..{ctx.N}")
    n, t = ctx.n, ctx.t
    k, p = divmod(K, 2)
    m1, m2, m3 = ctx.mus
    m12 = m1 + m2
    ratio = gamma_ratio(
        [n + k + m12 + 1 + p + t - p * t, n + k + m12 + m3 + Fraction(3, 2) + p * t],
        [k + m1 + HALF + p, k + m2 + HALF + p, n - k + m3 + HALF + t * (1 - p), k + m12 + 1],
    )
    pre = sqrt_hp(factorial(k) * factorial(n - k + p * t - p))
    return (-1) ** p / (2 * pre) * sqrt_hp(ratio)


def _check_z(z):
    if z * z == 1:
        raise PoleError(f"z = {z} is a pole of the z-form wavefunctions")


@hp_function
def FS_z(ctx: RacahContext, S: int, sign: int, z) -> mpmath.mpc:
    """F_S^+/- with cycled parameters, written in z."""
    _check_z(z)
    z = mpmath.mpc(z)
    s, p = divmod(S, 2)
    cyc = ctx.cycled()
    w = wave_norms(cyc, S)
    m2, m3 = ctx.mu2, ctx.mu3
    arg = (z * z + 1) / (z * z - 1)
    if sign > 0:
        return w.xi_plus * (
            w.E * jacobi(s + p, m3 - HALF, m2 - HALF, arg)
            - 1j * z / (1 - z * z) * (-1) ** p / w.E * jacobi(s + p - 1, m3 + HALF, m2 + HALF, arg)
        )
    return (
        w.xi_minus
        / mpmath.sqrt(1 - z * z)
        * (w.F * jacobi(s, m3 + HALF, m2 - HALF, arg) + 1j * z * (-1) ** p / w.F * jacobi(s, m3 - HALF, m2 + HALF, arg))
    )


@hp_function
def Zfull_z(ctx: RacahContext, S: int, z) -> mpmath.mpc:
    """Z_S^N(z) before disentangling, with the alpha reflection for even N."""
    if not 0 <= S <= ctx.N:
        raise ValueError(f"S={S} outside 0..{ctx.N}")
    _check_z(z)
    z = mpmath.mpc(z)
    n, t = ctx.n, ctx.t
    s, p = divmod(S, 2)
    m1, m2, m3 = ctx.mus
    w = wave_norms(ctx.cycled(), S)
    y = 2 * z * z - 1
    one_m = 1 - z * z
    first = z**t * w.B * jacobi(n - s - p, 2 * s + 2 * p + m2 + m3, m1 - HALF + t, y) * FS_z(ctx, S, +1, z)
    second = (
        z ** (1 - t) / w.B * jacobi(n + t - s - 1, 2 * s + 1 + m2 + m3, m1 + HALF - t, y) * FS_z(ctx, S, -1, z)
    )
    return w.A * (first * one_m ** (s + p) - second * one_m**s * mpmath.sqrt(one_m))


@hp_function
def Yas_z(ctx: RacahContext, K: int, z) -> mpmath.mpc:
    """Asymptotic Y_K^N as a two-monomial function of z."""
    if not 0 <= K <= ctx.N:
        raise ValueError(f"K={K} outside 0..{ctx.N}")
    n, t = ctx.n, ctx.t
    k, p = divmod(K, 2)
    m1, m2 = ctx.mu1, ctx.mu2
    m12 = m1 + m2
    w = wave_norms(ctx, K)
    even = (
        w.xi_plus
        * w.B
        * w.E
        * binom_general(n + k + p + m12, n - k - p)
        * binom_general(2 * k + 2 * p + m12 - 1, k + p)
        * psi(k, p, m1, m2, +1)
        * z ** (2 * k + 2 * p)
    )
    odd = (
        (-1) ** t
        * w.xi_minus
        / w.B
        * w.F
        * binom_general(n + t + k + m12, n + t - k - 1)
        * binom_general(2 * k + m12, k)
        * psi(k, p, m1, m2, -1)
        * z ** (2 * k + 1)
    )
    return w.A * (to_hp(even) + to_hp(odd))


@dataclass(frozen=True)
class GenfunFlags:
    """Readings of the disentangled generating function.

    ``l_power``: "1-t+u" puts z^(1-t+u) on the L-term, "t+u+1" puts
    z^(t+u+1). ``damping_scope``: whether (1-z^2)^(p-u) multiplies the U-term
    only or both terms. ``z_reflect``: evaluate at -z.
    """

    l_power: LPower = "1-t+u"
    damping_scope: DampingScope = "u_term"
    z_reflect: bool = False


DEFAULT_FLAGS = GenfunFlags()


@hp_function
def Ztilde_eval(ctx: RacahContext, S: int, z, flags: GenfunFlags = DEFAULT_FLAGS) -> mpmath.mpc:
    """Disentangled generating function Ztilde_S^N(z)."""
    if not 0 <= S <= ctx.N:
        raise ValueError(f"S={S} outside 0..{ctx.N}")
    _check_z(z)
    z = mpmath.mpc(z)
    if flags.z_reflect:
        z = -z
    n, t = ctx.n, ctx.t
    s, p = divmod(S, 2)
    m1, m2, m3 = ctx.mus
    nw = wave_norms(ctx.cycled(), S)
    w = (z * z + 1) / (z * z - 1)
    y = 2 * z * z - 1
    one_m = 1 - z * z
    r2 = mpmath.sqrt(2)
    jac_u = jacobi(n - s - p, 2 * s + 2 * p + m2 + m3, m1 - HALF + t, y)
    jac_l = jacobi(n + t - s - 1, 2 * s + 1 + m2 + m3, m1 + HALF - t, y)
    total = mpmath.mpc(0)
    for u in (0, 1):
        U = (-1) ** (p * u) / r2 * nw.A * nw.B * nw.E ** (1 - 2 * u) * nw.xi_plus
        L = (-1) ** (u * (p + 1)) / r2 * nw.A / nw.B * nw.F ** (1 - 2 * u) * nw.xi_minus
        uterm = U * jac_u * jacobi(s + p - u, m3 - HALF + u, m2 - HALF + u, w)
        lterm = L * jac_l * jacobi(s, m3 + HALF - u, m2 - HALF + u, w)
        damp = one_m ** (p - u)
        if flags.l_power == "1-t+u":
            lpow = z ** (1 - t + u)
        else:
            lpow = z ** (t + u + 1)
        if flags.damping_scope == "u_term":
            inner = z ** (t + u) * damp * uterm - lpow * lterm
        else:
            inner = damp * (z ** (t + u) * uterm - lpow * lterm)
        total += one_m**s * inner
    return total


@dataclass
class PolyZ:
    coeffs: list
    degree_bound: int
    fit_residual: mpmath.mpf

    def __call__(self, z):
        acc = mpmath.mpc(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def sample_points(M: int, radius=HALF) -> list:
    r = to_hp(radius)
    return [r * mpmath.expjpi(mpmath.mpf(2 * m) / M) for m in range(M)]


@hp_function
def fit_polynomial(values, points, degree_bound: int, radius=HALF) -> PolyZ:
    """Least-squares polynomial through equispaced samples on a circle.

    On M equispaced nodes the monomials z^0..z^(M-1) are orthogonal, so the
    least-squares coefficients are discrete Fourier sums.
    """
    M = len(points)
    if degree_bound >= M:
        raise ValueError(f"degree bound {degree_bound} needs more than {M} samples")
    r = to_hp(radius)
    coeffs = []
    for j in range(degree_bound + 1):
        acc = mpmath.mpc(0)
        for m, v in enumerate(values):
            acc += v * mpmath.expjpi(-mpmath.mpf(2 * j * m) / M)
        coeffs.append(acc / (M * r**j))
    poly = PolyZ(coeffs=coeffs, degree_bound=degree_bound, fit_residual=mpmath.mpf(0))
    poly.fit_residual = max(abs(poly(zm) - v) for zm, v in zip(points, values))
    return poly


@hp_function
def Ztilde_expand(ctx: RacahContext, S: int, flags: GenfunFlags = DEFAULT_FLAGS) -> PolyZ:
    """Coefficients of Ztilde_S^N in powers of z up to degree 2N+4."""
    M = 2 * ctx.N + 9
    pts = sample_points(M)
    vals = [Ztilde_eval(ctx, S, z, flags) for z in pts]
    poly = fit_polynomial(vals, pts, 2 * ctx.N + 4)
    if poly.fit_residual > mpmath.mpf(10) ** (20 - get_prec()):
        raise IllConditionedError(f"fit residual {mpmath.nstr(poly.fit_residual, 5)} for S={S}")
    return poly


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@hp_function
def verify_identity(
    ctx: RacahContext,
    flags: GenfunFlags = DEFAULT_FLAGS,
    *,
    corrupt_phase: bool = False,
    u_rule: URule = "a_prev_c",
) -> VerifyReport:
    """Compare the z-expansion of Ztilde_S with R[S][K] C_K for every S and K."""
    P = get_prec()
    tol = mpmath.mpf(10) ** (25 - P)
    tail_tol = mpmath.mpf(10) ** (20 - P)
    report = VerifyReport(
        context=context_dict(ctx),
        config={"flags": asdict(flags), "corrupt_phase": corrupt_phase, "u_rule": u_rule},
    )
    try:
        R = racah_matrix(ctx, corrupt_phase=corrupt_phase, u_rule=u_rule).entries
    except NumericDomainError as exc:
        report.per_check.append(Check.exact("genfun.racah_matrix", False))
        report.details["error"] = f"{type(exc).__name__}: {exc}"
        return report
    C = [monomial_coeff(ctx, K) for K in range(ctx.N + 1)]
    sign_mismatches = []
    magnitude_mismatches = []
    for S in range(ctx.N + 1):
        try:
            poly = Ztilde_expand(ctx, S, flags)
        except NumericDomainError as exc:
            report.per_check.append(Check.exact(f"genfun.identity[S={S}]", False))
            report.details.setdefault("errors", []).append(f"S={S}: {type(exc).__name__}: {exc}")
            continue
        expected = [R[S][K] * C[K] for K in range(ctx.N + 1)]
        scale = max(abs(e) for e in expected)
        abs_err = max(abs(poly.coeffs[K] - expected[K]) for K in range(ctx.N + 1))
        rel_err = abs_err / scale if scale else abs_err
        report.per_check.append(Check.measure(f"genfun.identity[S={S}]", abs_err, rel_err, tol))
        tail = max(abs(c) for c in poly.coeffs[ctx.N + 1 :])
        report.per_check.append(Check.measure(f"genfun.degree_tail[S={S}]", tail, tail, tail_tol))
        for K in range(ctx.N + 1):
            got = mpmath.re(poly.coeffs[K])
            if _sign(got) != _sign(expected[K]) and abs(expected[K]) > tol * scale:
                sign_mismatches.append([S, K])
            elif abs(abs(poly.coeffs[K]) - abs(expected[K])) > tol * scale:
                magnitude_mismatches.append([S, K])
    report.details["sign_mismatches"] = sign_mismatches
    report.details["magnitude_mismatches"] = magnitude_mismatches
    return report


@hp_function
def entangled_residual(ctx: RacahContext, zs) -> mpmath.mpf:
    """max over S and z of |Z_S(z) - sum_K R[S][K] Yas_K(z)|."""
    R = racah_matrix(ctx).entries
    worst = mpmath.mpf(0)
    for z in zs:
        Y = [Yas_z(ctx, K, z) for K in range(ctx.N + 1)]
        for S in range(ctx.N + 1):
            rhs = sum((R[S][K] * Y[K] for K in range(ctx.N + 1)), mpmath.mpc(0))
            worst = max(worst, abs(Zfull_z(ctx, S, z) - rhs))
    return worst


def all_flags() -> list[GenfunFlags]:
    return [
        GenfunFlags(lp, ds, zr)
        for lp, ds, zr in itertools.product(("1-t+u", "t+u+1"), ("u_term", "both"), (False, True))
    ]


def select_flags(contexts) -> GenfunFlags:
    """The unique flag combination under which every context verifies."""
    passing = [f for f in all_flags() if all(verify_identity(c, f).passed for c in contexts)]
    if len(passing) != 1:
        raise RuntimeError(f"generating-function reading not uniquely determined: {passing}")
    return passing[0]
