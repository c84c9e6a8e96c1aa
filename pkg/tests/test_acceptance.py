"""Acceptance criteria, one test per criterion (numbered ``test_criterion_NN``).

The conftest hook prints a PASS/FAIL line per criterion at the end of the run.
"""
import math
import time

import numpy as np
import pytest

from bregsym.catalog import (
    PiecewiseQuadratic1D,
    PNormPower,
    PowerAbs,
    QuadraticForm,
    ScaledSum,
    TwoNormPower,
)
from bregsym.oracle import alpha_grid_1d, alpha_sample_nd, quasiconcavity_check, ratio
from bregsym.palindromic import closed_form_alpha, factor_check
from bregsym.symmetry import (
    alpha_bounds,
    alpha_of,
    alpha_piecewise_quadratic,
    alpha_power,
    bregman_ratio_1d,
    bregman_ratio_polar,
)
from bregsym.sweep import sweep

ALPHA4 = 2.0 - math.sqrt(3.0)


def timed(fn, *args):
    start = time.perf_counter()
    value = fn(*args)
    return value, time.perf_counter() - start


def test_criterion_01_closed_form_agreement():
    alpha_power(5.0)  # warm-up
    expected = {
        2.0: 1.0,
        3.0: (1.0 - math.sqrt(2.0) * 3.0 ** 0.25 + math.sqrt(3.0)) / 2.0,
        4.0: ALPHA4,
        6.0: (7.0 - 3.0 * math.sqrt(5.0)) / 2.0,
    }
    for p, value in expected.items():
        cert, elapsed = timed(alpha_power, p, 1e-15)
        assert abs(cert.alpha - value) <= 1e-12, p
        assert elapsed < 0.010, (p, elapsed)


def test_criterion_02_appendix_values():
    for p, approx in ((8.0, 0.0982), (10.0, 0.0733)):
        a = alpha_power(p).alpha
        assert abs(a - approx) <= 5e-5
        assert abs(a - closed_form_alpha(int(p))) <= 1e-10


def test_criterion_03_conjugacy():
    rng = np.random.default_rng(2024)
    ps = rng.uniform(1.0, 2.0, 20)
    assert np.all((ps > 1.0) & (ps < 2.0))
    for p in ps:
        assert abs(alpha_power(p).alpha - alpha_power(p / (p - 1.0)).alpha) <= 1e-12, p


def test_criterion_04_monotonicity_and_sandwich():
    rows, elapsed = timed(sweep, 2.0, 1000.0, 200, "log")
    assert elapsed < 5.0
    assert len(rows) == 200
    alphas = [r.alpha for r in rows]
    assert all(b < a for a, b in zip(alphas, alphas[1:]))
    for r in rows:
        if r.p > 2.0:
            lo, hi = alpha_bounds(r.p)
            assert lo < r.alpha <= hi, r


def test_criterion_05_asymptotic_trend():
    rows = sweep(2.0, 1000.0, 200, "log")
    for r in rows:
        assert 2.0 * r.p * r.alpha > 1.0, r
    ratio_at = lambda p: 2.0 * p * alpha_power(p).alpha
    assert ratio_at(1000.0) < ratio_at(10.0)


def test_criterion_06_factorization():
    for p in range(4, 21, 2):
        assert factor_check(p) is True, p


def test_criterion_07_oracle_bisection_agreement():
    for p in (3.0, 4.0, 6.0, 8.0, 10.0, 50.0):
        est = alpha_grid_1d(p, 100_000, refine=True)
        assert abs(est.alpha_hat - alpha_power(p).alpha) <= 1e-8, p


def test_criterion_08_dimension_independence():
    start = time.perf_counter()
    functions = [TwoNormPower(4.0, d) for d in (1, 2, 3, 5)] + [PNormPower(4.0, 2)]
    for seed, f in enumerate(functions):
        est = alpha_sample_nd(f, 100_000, seed=seed, refine_steps=40)
        assert abs(est.alpha_hat - ALPHA4) <= 2e-3, f
        assert est.alpha_hat >= ALPHA4 - 1e-12, f
    assert time.perf_counter() - start < 30.0


def test_criterion_09_sum_rules():
    for beta, gamma in ((1.0, 1.0), (0.1, 3.0), (20.0, 0.5)):
        omega = ScaledSum(((beta / 4.0, TwoNormPower(4.0, 2)), (gamma / 2.0, TwoNormPower(2.0, 2))))
        cert = alpha_of(omega)
        assert abs(cert.alpha - ALPHA4) <= 1e-12
        assert cert.alpha > min(beta, gamma) / (5.0 * max(beta, gamma))
        est = alpha_sample_nd(omega, 100_000, seed=1)
        assert abs(est.alpha_hat - cert.alpha) <= 2e-3


def test_criterion_10_counterexample():
    h = ScaledSum(((1.0, PowerAbs(4.0 / 3.0, 0.75)), (1.0, PiecewiseQuadratic1D(1.0, 1e-7)),
                   (1.0, PowerAbs(4.0, 0.25))))
    assert ratio(h, 1e-3, -5e-2) < 0.2676


def test_criterion_11_perfect_symmetry():
    rng = np.random.default_rng(11)
    A = rng.standard_normal((4, 4))
    q = QuadraticForm(A @ A.T + 0.5 * np.eye(4), rng.standard_normal(4), float(rng.standard_normal()))
    X, Y = rng.standard_normal((10_000, 4)), rng.standard_normal((10_000, 4))
    r = q.divergence(X, Y) / q.divergence(Y, X)
    assert np.max(np.abs(r - 1.0)) <= 1e-12
    for a in (1e-7, 0.3, 1.0, 42.0):
        assert alpha_piecewise_quadratic(a, a) == 1.0


def test_criterion_12_property_suites():
    rng = np.random.default_rng(12)
    p_set = (2.5, 3.0, 4.0, 7.3, 20.0)
    for p in p_set:
        # reciprocal identity
        u = rng.uniform(0.0, 1.0, 100)
        u = u[u > 0.0]
        assert np.all(np.abs(bregman_ratio_1d(p, 1.0 / u) * bregman_ratio_1d(p, u) - 1.0) <= 1e-10)
        # denominator positivity
        g = np.linspace(-10.0, 10.0, 100_001)
        g = g[g != 1.0]
        den = (p - 1.0) * np.abs(g) ** p - p * np.sign(g) * np.abs(g) ** (p - 1.0) + 1.0
        assert np.all(den > 0.0)
        # quasiconcavity
        assert quasiconcavity_check(p)
    # pointwise monotonicity in p on (-1, 0)
    for _ in range(20):
        p = rng.uniform(2.0, 50.0)
        q = p + rng.uniform(0.01, 50.0)
        u = rng.uniform(-1.0, 0.0, 100)
        u = u[(u > -1.0) & (u < 0.0)]
        assert np.all(bregman_ratio_1d(q, u) > bregman_ratio_1d(p, u))
    # r-monotonicity of the polar profile
    r = np.linspace(-1.0, 1.0, 101)
    for p in (3.0, 4.0, 8.0):
        for u in np.linspace(0.0, 0.99, 100):
            vals = np.array([bregman_ratio_polar(p, u, ri) for ri in r])
            assert np.all(np.diff(vals) <= 1e-12 * np.max(vals)), (p, u)
