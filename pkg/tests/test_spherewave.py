import random
from fractions import Fraction

import mpmath
import pytest

from biracah.numcore import PoleError, binom_general, factorial, gamma_ratio
from biracah.racah import racah_matrix
from biracah.spherewave import (
    RacahContext,
    Y_eval,
    Z_eval,
    coord_map,
    fK,
    jacobi,
    sphere_gram,
    sphere_point,
    wave_norms,
)
from conftest import TRIPLES, contexts, ctx_id
from oracles import jacobi_2f1, jacobi_binomial_sum

HALF = Fraction(1, 2)
EPS = mpmath.mpf(10) ** -50


def test_context_validation():
    with pytest.raises(ValueError):
        RacahContext(0, HALF, HALF, 1)
    with pytest.raises(ValueError):
        RacahContext(HALF, HALF, HALF, -1)
    ctx = RacahContext(HALF, Fraction(1, 4), 1, 5)
    assert (ctx.n, ctx.t) == (2, 1)
    assert ctx.cycled().mus == (Fraction(1, 4), 1, HALF)


def test_jacobi_boundary_cases():
    assert jacobi(-1, HALF, HALF, Fraction(1, 3)) == 0
    assert jacobi(0, HALF, HALF, Fraction(1, 3)) == 1
    for n in range(7):
        for a in (HALF, Fraction(-1, 3), Fraction(5, 2)):
            assert jacobi(n, a, Fraction(2, 7), 1) == binom_general(n + a, n)


def test_jacobi_matches_oracles_exactly():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(0, 6)
        a = Fraction(rng.randint(-3, 12), rng.randint(1, 6))
        b = Fraction(rng.randint(-3, 12), rng.randint(1, 6))
        x = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        v = jacobi(n, a, b, x)
        assert isinstance(v, Fraction)
        assert v == jacobi_binomial_sum(n, a, b, x)
        if a + 1 + n - 1 != 0 and all(a + 1 + k != 0 for k in range(n)):
            assert v == jacobi_2f1(n, a, b, x)


def test_jacobi_degenerate_recurrence_falls_back():
    # a + b = -2 makes a recurrence denominator vanish at k = 2
    a, b = Fraction(-1, 2), Fraction(-3, 2)
    x = Fraction(1, 5)
    assert jacobi(3, a, b, x) == jacobi_binomial_sum(3, a, b, x)


@pytest.mark.parametrize("ctx", contexts(6), ids=ctx_id)
def test_wave_norms_positive_and_closed_form(ctx, prec60):
    n, t = ctx.n, ctx.t
    m12, m3 = ctx.mu1 + ctx.mu2, ctx.mu3
    for K in range(ctx.N + 1):
        w = wave_norms(ctx, K)
        assert abs(w.A) > 0
        assert min(w.B, w.xi_plus, w.xi_minus, w.E, w.F) > 0
        k, p = divmod(K, 2)
        g = factorial(n - k + p * (t - 1)) * gamma_ratio(
            [n + k + m12 + m3 + Fraction(3, 2) + p * t],
            [n + k + m12 + 1 + p * t, n - k + m3 + HALF + p * (t - 1)],
        )
        assert abs(w.A**2 / g - 1) < mpmath.mpf(10) ** -50


def test_fk_k0_examples(prec60):
    ctx = RacahContext(Fraction(1, 4), Fraction(3, 4), 1, 2)
    w = wave_norms(ctx, 0)
    phi = mpmath.mpf("0.7")
    assert abs(fK(ctx, 0, +1, phi) - w.xi_plus) < EPS
    assert w.F == 1
    expected = w.xi_minus * (mpmath.sin(phi) + mpmath.cos(phi))
    assert abs(fK(ctx, 0, -1, phi) - expected) < EPS
    assert mpmath.im(fK(ctx, 1, -1, phi)) == 0


def test_y00_is_constant(prec60):
    for mus in TRIPLES:
        ctx = RacahContext(*mus, 0)
        w = wave_norms(ctx, 0)
        for th, ph in [(0.3, 0.4), (1.2, 2.9)]:
            assert abs(Y_eval(ctx, 0, th, ph) - w.A * w.xi_plus) < EPS


@pytest.mark.parametrize("ctx", contexts(4), ids=ctx_id)
def test_orthonormal_on_sphere(ctx, prec30):
    G = sphere_gram(ctx, order=ctx.N + 4)
    for i in range(ctx.N + 1):
        for j in range(ctx.N + 1):
            assert abs(G[i, j] - (1 if i == j else 0)) < mpmath.mpf(10) ** -15


def test_orthonormal_default_order(prec30):
    ctx = RacahContext(Fraction(2, 3), Fraction(1, 3), Fraction(5, 4), 2)
    G = sphere_gram(ctx)
    assert mpmath.mnorm(G - mpmath.eye(3), 1) < mpmath.mpf(10) ** -15


@pytest.mark.parametrize("ctx", contexts(5), ids=ctx_id)
def test_parity_under_inversion(ctx, prec60):
    rng = random.Random(ctx.N)
    for _ in range(10):
        th, ph = mpmath.mpf(rng.uniform(0.2, 1.3)), mpmath.mpf(rng.uniform(0.2, 1.3))
        for K in range(ctx.N + 1):
            lhs = Y_eval(ctx, K, mpmath.pi - th, ph + mpmath.pi)
            assert abs(lhs - (-1) ** ctx.N * Y_eval(ctx, K, th, ph)) < EPS


def test_coord_map_examples(prec60):
    alpha, beta = coord_map(0, mpmath.mpf("0.9"))
    assert abs(alpha - mpmath.pi / 2) < EPS and abs(beta - mpmath.pi / 2) < EPS
    with pytest.raises(PoleError) as info:
        coord_map(mpmath.pi / 2, 0)
    assert abs(info.value.alpha) < EPS


def test_coord_map_relations(prec60):
    rng = random.Random(2)
    for _ in range(10):
        th, ph = mpmath.mpf(rng.uniform(0.1, 3.0)), mpmath.mpf(rng.uniform(-3, 3))
        alpha, beta = coord_map(th, ph)
        x, y, z = sphere_point(th, ph)
        assert abs(x * x + y * y + z * z - 1) < EPS
        assert abs(mpmath.sin(alpha) * mpmath.cos(beta) - y) < EPS
        assert abs(mpmath.sin(alpha) * mpmath.sin(beta) - z) < EPS
        assert abs(mpmath.cos(alpha) - x) < EPS
        assert 0 <= alpha <= mpmath.pi


def test_z_is_cycled_y(prec60):
    a, b = mpmath.mpf("0.8"), mpmath.mpf("0.5")
    for N in (2, 3):
        ctx = RacahContext(Fraction(1, 4), Fraction(3, 4), 1, N)
        for S in range(N + 1):
            arg = mpmath.pi - a if N % 2 == 0 else a
            assert Z_eval(ctx, S, a, b) == Y_eval(ctx.cycled(), S, arg, b)


@pytest.mark.parametrize("ctx", contexts(6), ids=ctx_id)
def test_decomposition_pointwise(ctx, prec60):
    R = racah_matrix(ctx).entries
    rng = random.Random(17)
    for _ in range(4):
        th = mpmath.mpf(rng.uniform(0.2, 1.37))
        ph = mpmath.mpf(rng.uniform(0.2, 1.37))
        alpha, beta = coord_map(th, ph)
        Y = [Y_eval(ctx, K, th, ph) for K in range(ctx.N + 1)]
        for S in range(ctx.N + 1):
            rhs = sum(R[S][K] * Y[K] for K in range(ctx.N + 1))
            assert abs(Z_eval(ctx, S, alpha, beta) - rhs) < mpmath.mpf(10) ** -45


def test_real_angles_give_real_values(prec60):
    ctx = RacahContext(Fraction(2, 3), Fraction(1, 3), Fraction(5, 4), 3)
    for K in range(4):
        v = Y_eval(ctx, K, mpmath.mpf("0.4"), mpmath.mpf("1.1"))
        assert isinstance(v, mpmath.mpf)
