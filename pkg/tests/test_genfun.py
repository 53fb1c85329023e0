import random
from fractions import Fraction

import mpmath
import pytest

from biracah.genfun import (
    DEFAULT_FLAGS,
    FS_z,
    GenfunFlags,
    IllConditionedError,
    PolyZ,
    Yas_z,
    Zfull_z,
    Ztilde_eval,
    Ztilde_expand,
    all_flags,
    disentangle,
    entangled_residual,
    fit_polynomial,
    monomial_coeff,
    psi,
    psi_exact,
    sample_points,
    select_flags,
    verify_identity,
)
from biracah.numcore import PoleError, to_hp
from biracah.racah import racah_matrix
from biracah.spherewave import RacahContext, Z_trig, fK_trig, wave_norms
from conftest import TRIPLES, contexts, ctx_id
from oracles import monomial_coeff_assembled

HALF = Fraction(1, 2)
EPS = mpmath.mpf(10) ** -50


def sample_z(seed, count=10):
    rng = random.Random(seed)
    return [mpmath.mpc(rng.uniform(-0.8, 0.8), rng.uniform(-0.3, 0.3)) for _ in range(count)]


def test_psi_examples():
    assert psi_exact(0, 0, HALF, HALF, +1) == (1, 0)
    assert psi_exact(0, 0, HALF, HALF, -1) == (1, 1)


def test_psi_matched_and_mismatched_branches():
    for mu1, mu2 in [(HALF, HALF), (Fraction(1, 4), Fraction(3, 4)), (Fraction(2, 3), Fraction(1, 3))]:
        for k in range(5):
            # mismatched: Psi_+ with p = 1 and Psi_- with p = 0 are exactly 1 + i
            assert psi_exact(k, 1, mu1, mu2, +1) == (1, 1)
            assert psi_exact(k, 0, mu1, mu2, -1) == (1, 1)
            assert psi_exact(k, 0, mu1, mu2, +1) == (1, -Fraction(k) / (k + mu1 + mu2))
            assert psi_exact(k, 1, mu1, mu2, -1) == (-(k + mu2 + HALF) / (k + mu1 + HALF), 1)


def test_disentangle_examples(prec60):
    assert abs(disentangle(mpmath.mpc(1, 1))) < EPS
    assert abs(disentangle(1) - mpmath.sqrt(2) / 2) < EPS
    mu1, mu2 = Fraction(1, 4), Fraction(3, 4)
    for k in range(4):
        even = disentangle(psi(k, 0, mu1, mu2, +1))
        assert abs(even - (1 + mpmath.mpf(k) / (k + 1)) / mpmath.sqrt(2)) < EPS
        odd = disentangle(psi(k, 1, mu1, mu2, -1))
        ratio = to_hp((k + mu2 + HALF) / (k + mu1 + HALF))
        assert abs(odd + (1 + ratio) / mpmath.sqrt(2)) < EPS


def test_monomial_coeff_smallest(prec60):
    ctx = RacahContext(HALF, HALF, HALF, 0)
    assert abs(monomial_coeff(ctx, 0) - mpmath.sqrt(2) / 2) < EPS


@pytest.mark.parametrize("ctx", contexts(8), ids=ctx_id)
def test_monomial_coeff_closed_vs_assembled(ctx, prec60):
    for K in range(ctx.N + 1):
        c = monomial_coeff(ctx, K)
        assert abs(c - monomial_coeff_assembled(ctx, K)) <= mpmath.mpf(10) ** -50 * abs(c)
        assert (c > 0) == (K % 2 == 0)


def test_fs_z_k0(prec60):
    ctx = RacahContext(Fraction(1, 4), Fraction(3, 4), 1, 3)
    w = wave_norms(ctx.cycled(), 0)
    for z in sample_z(1, 3):
        assert abs(FS_z(ctx, 0, +1, z) - w.xi_plus) < EPS


@pytest.mark.parametrize("ctx", contexts(5), ids=ctx_id)
def test_fs_z_matches_trig_substitution(ctx, prec60):
    cyc = ctx.cycled()
    for z in sample_z(2):
        sb = 1 / mpmath.sqrt(1 - z * z)
        cb = 1j * z * sb
        for S in range(ctx.N + 1):
            for sign in (1, -1):
                assert abs(FS_z(ctx, S, sign, z) - fK_trig(cyc, S, sign, cb, sb)) < EPS


@pytest.mark.parametrize("ctx", contexts(5), ids=ctx_id)
def test_zfull_matches_trig_substitution(ctx, prec60):
    for z in sample_z(3):
        sa = mpmath.sqrt(1 - z * z)
        for S in range(ctx.N + 1):
            ref = Z_trig(ctx, S, z, sa, 1j * z / sa, 1 / sa)
            assert abs(Zfull_z(ctx, S, z) - ref) < EPS


def test_poles_rejected():
    ctx = RacahContext(HALF, HALF, HALF, 2)
    for fn in (lambda z: FS_z(ctx, 1, 1, z), lambda z: Zfull_z(ctx, 1, z), lambda z: Ztilde_eval(ctx, 1, z)):
        with pytest.raises(PoleError):
            fn(1)
        with pytest.raises(PoleError):
            fn(-1)


@pytest.mark.parametrize("ctx", contexts(6), ids=ctx_id)
def test_entangled_identity(ctx, prec60):
    assert entangled_residual(ctx, sample_z(4)) <= mpmath.mpf(10) ** -40


@pytest.mark.parametrize("ctx", contexts(6), ids=ctx_id)
def test_ztilde_is_rotated_real_part(ctx, prec60):
    for z in sample_z(5, 4):
        z = mpmath.re(z)
        for S in range(ctx.N + 1):
            assert abs(Ztilde_eval(ctx, S, z) - disentangle(Zfull_z(ctx, S, z))) < mpmath.mpf(10) ** -45


def test_ztilde_real_on_real_axis(prec60):
    for ctx in contexts(5):
        for S in range(ctx.N + 1):
            v = Ztilde_eval(ctx, S, mpmath.mpf("0.37"))
            assert abs(mpmath.im(v)) <= mpmath.mpf(10) ** (5 - 60)


def test_n0_expansion_is_constant(prec60):
    ctx = RacahContext(HALF, HALF, HALF, 0)
    poly = Ztilde_expand(ctx, 0)
    expected = racah_matrix(ctx).entries[0][0] * monomial_coeff(ctx, 0)
    assert abs(poly.coeffs[0] - expected) < EPS
    assert max(abs(c) for c in poly.coeffs[1:]) < mpmath.mpf(10) ** -40
    assert poly.degree_bound == 4


def test_fit_matches_vandermonde_solve(prec60):
    ctx = RacahContext(Fraction(2, 3), Fraction(1, 3), Fraction(5, 4), 3)
    M = 2 * ctx.N + 9
    pts = sample_points(M)
    vals = [Ztilde_eval(ctx, 2, z) for z in pts]
    poly = fit_polynomial(vals, pts, 2 * ctx.N + 4)
    # least squares through the normal equations of the Vandermonde system
    V = mpmath.matrix([[z**j for j in range(2 * ctx.N + 5)] for z in pts])
    Vh = V.transpose_conj()
    sol = mpmath.lu_solve(Vh * V, Vh * mpmath.matrix(vals))
    for j in range(2 * ctx.N + 5):
        assert abs(sol[j] - poly.coeffs[j]) < mpmath.mpf(10) ** -40


def test_fit_rejects_non_polynomial(prec60):
    pts = sample_points(9)
    vals = [1 / (z - 2) for z in pts]
    poly = fit_polynomial(vals, pts, 4)
    assert poly.fit_residual > mpmath.mpf(10) ** -10
    assert isinstance(poly, PolyZ)


def test_expand_raises_when_ill_conditioned(monkeypatch, prec60):
    import biracah.genfun as gf

    monkeypatch.setattr(gf, "Ztilde_eval", lambda ctx, S, z, flags=DEFAULT_FLAGS: 1 / (z - mpmath.mpf("0.6")))
    with pytest.raises(IllConditionedError):
        gf.Ztilde_expand(RacahContext(HALF, HALF, HALF, 1), 0)


@pytest.mark.parametrize("ctx", contexts(6), ids=ctx_id)
def test_identity_holds(ctx, prec60):
    report = verify_identity(ctx)
    assert report.passed, report.failures()
    assert report.details["sign_mismatches"] == []


def test_corrupted_phase_localized(prec60):
    ctx = RacahContext(Fraction(1, 4), Fraction(3, 4), 1, 4)
    report = verify_identity(ctx, corrupt_phase=True)
    assert not report.passed
    mism = report.details["sign_mismatches"]
    assert mism and all(S % 2 == 1 for S, _ in mism)
    assert {S for S, _ in mism} == {1, 3}


def test_u_rule_swap_fails(prec60):
    ctx = RacahContext(Fraction(1, 4), Fraction(3, 4), 1, 4)
    for rule in ("a_c", "a_prev_c_prev"):
        report = verify_identity(ctx, u_rule=rule)
        assert not report.passed
        assert "error" in report.details


def test_alternative_l_power_fails_only_for_odd_n(prec60):
    flags = GenfunFlags(l_power="t+u+1")
    for mus in TRIPLES:
        assert verify_identity(RacahContext(*mus, 2), flags).passed
        assert not verify_identity(RacahContext(*mus, 3), flags).passed


def test_flag_selection_is_unique(prec60):
    chosen = select_flags([RacahContext(*mus, N) for mus in TRIPLES for N in (1, 2, 3)])
    assert chosen == DEFAULT_FLAGS
    assert len(all_flags()) == 8
