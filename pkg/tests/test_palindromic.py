import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bregsym.palindromic import (
    IntegerPolynomial,
    closed_form_alpha,
    closed_form_root,
    factor_check,
    g_p_int,
    h1_int,
    h2_int,
    half_substitution,
    real_roots,
    reduced_factors,
    tetrahedral,
    tetrahedral_series,
    triangular,
)
from bregsym.symmetry import alpha_power, bregman_ratio_1d, stationarity_poly

EVEN_P = range(4, 21, 2)


def P(*coeffs):
    return IntegerPolynomial(coeffs)


def test_integer_polynomial_basics():
    a = P(1, 2, 0, 0)
    assert a.coeffs == (1, 2) and a.degree == 1
    assert P(0, 0).degree == -1
    assert (P(1, 1) * P(1, 1)).coeffs == (1, 2, 1)
    assert (P(1, 1) ** 4).coeffs == (1, 4, 6, 4, 1)
    assert (P(1, 2) - P(1, 2)).coeffs == (0,)
    assert (3 * P(1, -1)).coeffs == (3, -3)
    assert P(1, -4, 1)(2) == -3
    assert P(1, 0, 1).is_palindromic() and not P(1, 2).is_palindromic()
    with pytest.raises(ValueError):
        P(1, 0.5)


def test_integer_arithmetic_is_exact_for_large_coefficients():
    big = P(10 ** 30, 1) ** 3
    assert big.coeffs[0] == 10 ** 90
    assert isinstance(big.coeffs[0], int)


def test_triangular_and_tetrahedral_examples():
    assert (triangular(3), triangular(0), triangular(1)) == (6, 0, 1)
    assert (tetrahedral(1), tetrahedral(3), tetrahedral(-2)) == (1, 10, 0)


def test_recurrences():
    for n in range(-5, 51):
        if n >= 1:
            assert triangular(n) == triangular(n - 1) + n
            assert tetrahedral(n) == tetrahedral(n - 1) + triangular(n)
            assert tetrahedral(n) == sum(triangular(k) for k in range(1, n + 1))
        else:
            assert triangular(n) == 0 and tetrahedral(n) == 0


def test_polynomial_examples():
    assert g_p_int(4).coeffs == (1, 0, -9, -16, -9, 0, 1)
    g6 = g_p_int(6)
    assert g6.degree == 10 and g6.coeffs[4] == g6.coeffs[6] == -25 and g6.coeffs[5] == -48
    assert h1_int(4).coeffs == (1,)
    assert h1_int(6).coeffs == (1, -3, 1)
    assert h1_int(8).coeffs == (1, -3, 6, -3, 1)
    assert h2_int(4).coeffs == (1, -4, 1)
    assert h2_int(8).coeffs == (1, -1, 1, -8, 1, -1, 1)
    assert h2_int(6).coeffs == (1, -1, 6, -1, 1)


@pytest.mark.parametrize("p", EVEN_P)
def test_structure(p):
    g = g_p_int(p)
    assert g.degree == 2 * (p - 1)
    assert h1_int(p).degree == p - 4 and h2_int(p).degree == p - 2
    for poly in (g, h1_int(p), h2_int(p), tetrahedral_series(p)):
        assert poly.is_palindromic()
    # integer polynomial agrees with the real-exponent stationarity function
    for u in (0.0, 0.3, 0.77, 1.0):
        assert float(g(u)) == pytest.approx(stationarity_poly(float(p), u), abs=1e-9 * p ** 2)


@pytest.mark.parametrize("p", EVEN_P)
def test_factor_check(p):
    assert factor_check(p)
    quartic = IntegerPolynomial((1, 1)) ** 4
    assert quartic * h1_int(p) * h2_int(p) == g_p_int(p)
    assert quartic * tetrahedral_series(p) == g_p_int(p)


def test_factor_examples():
    assert (P(1, 1) ** 4 * P(1, -4, 1)) == g_p_int(4)
    assert (P(1, 1) ** 4 * P(1, -3, 1) * P(1, -1, 6, -1, 1)) == g_p_int(6)


@pytest.mark.parametrize("p", [3, 5, 2, 0, -4, 4.5])
def test_even_only(p):
    for fn in (g_p_int, h1_int, h2_int, factor_check):
        with pytest.raises(ValueError):
            fn(p)


def test_half_substitution_examples():
    assert half_substitution(P(1, -4, 1)).coeffs == (-4, 1)
    assert half_substitution(h2_int(8)).coeffs == (-6, -2, -1, 1)
    assert half_substitution(P(1, 0, 1)).coeffs == (0, 1)
    with pytest.raises(ValueError):
        half_substitution(P(1, 2, 3))
    with pytest.raises(ValueError):
        half_substitution(P(1, 1))


palindromes = st.lists(st.integers(-50, 50), min_size=1, max_size=7).filter(
    lambda c: c[0] != 0).map(lambda c: IntegerPolynomial(tuple(c + c[-2::-1])))


@settings(max_examples=100, deadline=None)
@given(poly=palindromes, u=st.floats(0.1, 3.0))
def test_half_substitution_identity(poly, u):
    red = half_substitution(poly)
    d = poly.degree
    assert red.degree == d // 2
    lhs = float(poly(u))
    rhs = u ** (d // 2) * float(red(u + 1.0 / u))
    assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(lhs)) * max(1.0, sum(map(abs, poly.coeffs)))


@pytest.mark.parametrize("p", EVEN_P)
def test_half_substitution_of_factors(p):
    rng = np.random.default_rng(p)
    for poly in (h1_int(p), h2_int(p)):
        if poly.degree == 0:
            continue
        red = half_substitution(poly)
        for u in rng.uniform(0.1, 3.0, 20):
            lhs = float(poly(u))
            rhs = u ** (poly.degree // 2) * float(red(u + 1.0 / u))
            assert abs(lhs - rhs) <= 1e-9 * (1.0 + abs(lhs))


@settings(max_examples=100, deadline=None)
@given(c=st.lists(st.integers(-30, 30), min_size=2, max_size=5).filter(lambda c: c[-1] != 0))
def test_real_roots_against_companion_matrix(c):
    mine = real_roots(IntegerPolynomial(tuple(c)))
    for v in mine:
        assert abs(np.polyval(c[::-1], v)) <= 1e-8 * (1.0 + sum(abs(x) * abs(v) ** k for k, x in enumerate(c)))
    ref = np.roots(c[::-1])
    for i, z in enumerate(ref):
        others = np.delete(ref, i)
        well_separated = others.size == 0 or np.min(np.abs(others - z)) > 1e-3
        if abs(z.imag) < 1e-9 and well_separated:
            assert any(abs(z.real - w) <= 1e-7 * (1.0 + abs(z.real)) for w in mine)


@pytest.mark.parametrize("p", [3, 4, 6, 8, 10])
def test_root_consistency(p):
    u0 = closed_form_root(p)
    assert 0.0 < u0 < 1.0
    assert abs(stationarity_poly(float(p), u0)) <= 1e-10
    alpha = 1.0 / bregman_ratio_1d(float(p), -u0)
    assert alpha == pytest.approx(closed_form_alpha(p), abs=1e-10)
    assert alpha == pytest.approx(alpha_power(float(p)).alpha, abs=1e-10)


def test_reduced_factors():
    assert reduced_factors(3)[0].coeffs == (1, -4, -6, -4, 1)
    assert reduced_factors(8) == [h1_int(8), h2_int(8)]


def test_closed_form_examples():
    assert closed_form_alpha(2) == 1.0
    assert closed_form_alpha(3) == pytest.approx((1 - math.sqrt(2) * 3 ** 0.25 + math.sqrt(3)) / 2, rel=1e-12)
    assert closed_form_alpha(4) == pytest.approx(0.2679491924311227, rel=1e-15)
    assert closed_form_alpha(6) == pytest.approx(0.1458980337503155, rel=1e-15)
    assert closed_form_alpha(8) == pytest.approx(0.0982, abs=5e-5)
    assert closed_form_alpha(10) == pytest.approx(0.0733, abs=5e-5)
    for p in (5, 12, 1, 7):
        with pytest.raises(ValueError):
            closed_form_alpha(p)
