"""Verification suites run by the ``verify`` command and the acceptance tests.

Each suite takes a :class:`RacahContext` and a :class:`VerifyConfig` and returns
a :class:`VerifyReport`. Exact suites report errors of "0" or "inf"; numeric
suites measure residuals against tolerances that scale with the precision.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import mpmath

from . import genfun
from .bannai import (
    HALF,
    bi_coeffs,
    bi_operator_apply,
    eigenvalue,
    gram_matrix,
    h_norm,
    poly_eval,
)
from .numcore import NumericDomainError, get_prec, hp_function, to_hp
from .racah import URule, racah_matrix, u_product
from .report import Check, VerifyReport, context_dict
from .spherewave import RacahContext, Y_eval, Z_eval, coord_map

SUITES = ("orthogonality", "eigen", "unitarity", "decomposition", "genfun")


@dataclass(frozen=True)
class VerifyConfig:
    seed: int = 0
    corrupt_phase: bool = False
    u_rule: URule = "a_prev_c"
    eigen_samples: int = 10
    angle_samples: int = 20
    z_samples: int = 10
    flags: genfun.GenfunFlags = field(default_factory=genfun.GenfunFlags)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["precision"] = get_prec()
        return d


def random_rationals(rng: random.Random, count: int, exclude=(Fraction(0), -HALF)) -> list[Fraction]:
    """Distinct rationals p/q with |p| <= 40, 1 <= q <= 12, avoiding ``exclude``."""
    out: list[Fraction] = []
    while len(out) < count:
        x = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
        if x not in exclude and x not in out:
            out.append(x)
    return out


def random_angles(rng: random.Random, count: int) -> list[tuple]:
    """Angle pairs in (0.2, pi/2 - 0.2), drawn as exact rationals of the interval."""
    lo, width = mpmath.mpf("0.2"), mpmath.pi / 2 - mpmath.mpf("0.4")
    pairs = []
    for _ in range(count):
        u = to_hp(Fraction(rng.randrange(1, 10**12), 10**12))
        v = to_hp(Fraction(rng.randrange(1, 10**12), 10**12))
        pairs.append((lo + width * u, lo + width * v))
    return pairs


def _new_report(ctx: RacahContext, config: VerifyConfig) -> VerifyReport:
    return VerifyReport(context=context_dict(ctx), config=config.as_dict())


def orthogonality(ctx: RacahContext, config: VerifyConfig = VerifyConfig()) -> VerifyReport:
    p = ctx.bi
    report = _new_report(ctx, config)
    G = gram_matrix(p)
    size = p.N + 1
    bad = [[n, m] for n in range(size) for m in range(size) if n != m and G[n][m] != 0]
    report.per_check.append(Check.exact("orthogonality.offdiagonal", not bad))
    h = h_norm(p)
    norm_bad = [n for n in range(size) if G[n][n] != h * u_product(p, n, config.u_rule)]
    report.per_check.append(Check.exact("orthogonality.norms", not norm_bad))
    report.details["nonzero_offdiagonal"] = bad
    report.details["norm_mismatches"] = norm_bad
    return report


def eigen(ctx: RacahContext, config: VerifyConfig = VerifyConfig()) -> VerifyReport:
    p = ctx.bi
    report = _new_report(ctx, config)
    rng = random.Random(config.seed)
    failures = []
    for n in range(p.N + 1):
        coeffs = bi_coeffs(p, n)
        lam = eigenvalue(p, n)
        for x in random_rationals(rng, config.eigen_samples):
            if bi_operator_apply(p, coeffs, x) != lam * poly_eval(coeffs, x):
                failures.append([n, str(x)])
        report.per_check.append(Check.exact(f"eigen[n={n}]", not any(f[0] == n for f in failures)))
    report.details["failures"] = failures
    return report


@hp_function
def unitarity(ctx: RacahContext, config: VerifyConfig = VerifyConfig()) -> VerifyReport:
    report = _new_report(ctx, config)
    tol = mpmath.mpf(10) ** (15 - get_prec())
    try:
        R = racah_matrix(ctx, corrupt_phase=config.corrupt_phase, u_rule=config.u_rule)
    except NumericDomainError as exc:
        report.per_check.append(Check.exact("unitarity.residual", False))
        report.details["error"] = f"{type(exc).__name__}: {exc}"
        return report
    report.per_check.append(Check.measure("unitarity.residual", R.residual, R.residual, tol))
    return report


@hp_function
def decomposition(ctx: RacahContext, config: VerifyConfig = VerifyConfig()) -> VerifyReport:
    """Z_S(alpha, beta) = sum_K R[S][K] Y_K(theta, phi) at seeded random points."""
    report = _new_report(ctx, config)
    tol = mpmath.mpf(10) ** (15 - get_prec())
    try:
        R = racah_matrix(ctx, corrupt_phase=config.corrupt_phase, u_rule=config.u_rule).entries
    except NumericDomainError as exc:
        report.per_check.append(Check.exact("decomposition.residual", False))
        report.details["error"] = f"{type(exc).__name__}: {exc}"
        return report
    rng = random.Random(config.seed)
    size = ctx.N + 1
    worst_abs = mpmath.mpf(0)
    worst_rel = mpmath.mpf(0)
    for theta, phi in random_angles(rng, config.angle_samples):
        alpha, beta = coord_map(theta, phi)
        Y = [Y_eval(ctx, K, theta, phi) for K in range(size)]
        for S in range(size):
            lhs = Z_eval(ctx, S, alpha, beta)
            rhs = sum((R[S][K] * Y[K] for K in range(size)), mpmath.mpf(0))
            err = abs(lhs - rhs)
            scale = max(abs(lhs), max(abs(y) for y in Y))
            worst_abs = max(worst_abs, err)
            worst_rel = max(worst_rel, err / scale if scale else err)
    report.per_check.append(Check.measure("decomposition.residual", worst_abs, worst_rel, tol))
    return report


@hp_function
def genfun_suite(ctx: RacahContext, config: VerifyConfig = VerifyConfig()) -> VerifyReport:
    report = genfun.verify_identity(ctx, config.flags, corrupt_phase=config.corrupt_phase, u_rule=config.u_rule)
    report.config = config.as_dict()
    if config.corrupt_phase or config.u_rule != "a_prev_c":
        # the entangled check below uses the shipped Racah matrix only
        return report
    rng = random.Random(config.seed)
    zs = [
        mpmath.mpc(to_hp(Fraction(rng.randint(-80, 80), 100)), to_hp(Fraction(rng.randint(-30, 30), 100)))
        for _ in range(config.z_samples)
    ]
    res = genfun.entangled_residual(ctx, zs)
    report.per_check.append(Check.measure("genfun.entangled", res, res, mpmath.mpf(10) ** (20 - get_prec())))
    return report


RUNNERS = {
    "orthogonality": orthogonality,
    "eigen": eigen,
    "unitarity": unitarity,
    "decomposition": decomposition,
    "genfun": genfun_suite,
}


def run(which: str, ctx: RacahContext, config: VerifyConfig = VerifyConfig()) -> VerifyReport:
    """Run one suite, or all of them in a fixed order for ``which="all"``."""
    if which == "all":
        report = _new_report(ctx, config)
        for name in SUITES:
            sub = RUNNERS[name](ctx, config)
            report.per_check.extend(sub.per_check)
            if sub.details:
                report.details[name] = sub.details
        return report
    if which not in RUNNERS:
        raise ValueError(f"unknown suite {which!r}; choose from {', '.join(SUITES)} or all")
    return RUNNERS[which](ctx, config)
