import math

import numpy as np
import pytest
from scipy import special

from gridrbf.basis import RadialKernel, theta3
from gridrbf.errors import PoleError, UnsupportedError
from gridrbf.symbol import (
    SymbolEvaluator,
    gaussian_extrema,
    gaussian_symbol_theta,
    log_abs_symbol,
    optimal_bound,
    scaled_bound_monotone,
    symbol,
    szego_estimates,
)

TWO_PI = 2 * math.pi


def brute_mq_symbol(c, xi, K=300):
    """Independent oracle: direct truncated lattice sum with scipy's K_1."""
    k = np.arange(-K, K + 1)
    r = np.abs(np.asarray(xi, dtype=float)[..., None] + TWO_PI * k)
    return np.sum(-2 * c * special.kv(1, c * r) / r, axis=-1)


def sig6(x):
    return float(f"{x:.5e}")


# ------------------------------------------------------------- symbol values
def test_gaussian_symbol_decreasing_on_half_period():
    ev = SymbolEvaluator(RadialKernel.gaussian(1.0))
    xi = np.linspace(0, math.pi, 400)
    vals = symbol(ev, xi)
    assert np.all(np.diff(vals) < 0)
    assert vals[0] > vals[200] > vals[-1]


def test_gaussian_symbol_matches_direct_sum():
    ev = SymbolEvaluator(RadialKernel.gaussian(1.0))
    xi = np.linspace(-3, 3, 13)
    k = np.arange(-20, 21)
    ref = math.sqrt(math.pi) * np.exp(-((xi[:, None] + TWO_PI * k) ** 2) / 4).sum(axis=1)
    np.testing.assert_allclose(symbol(ev, xi), ref, rtol=1e-14)


def test_multiquadric_symbol_at_pi():
    ev = SymbolEvaluator(RadialKernel.multiquadric(1.0))
    assert abs(symbol(ev, math.pi)) == pytest.approx(4.319455e-2, rel=5e-7)


@pytest.mark.parametrize("c", [0.2, 1.0, 3.0])
def test_multiquadric_symbol_matches_brute_force(c):
    ev = SymbolEvaluator(RadialKernel.multiquadric(c))
    xi = np.array([0.3, 1.0, 2.2, math.pi, 4.0, 5.9])
    np.testing.assert_allclose(symbol(ev, xi), brute_mq_symbol(c, xi), rtol=1e-13)


def test_gaussian_two_dimensional_factorization():
    rng = np.random.default_rng(3)
    ev1 = SymbolEvaluator(RadialKernel.gaussian(1.0), 1)
    ev2 = SymbolEvaluator(RadialKernel.gaussian(1.0), 2)
    pts = rng.uniform(-4, 4, (10, 2))
    np.testing.assert_allclose(
        symbol(ev2, pts), symbol(ev1, pts[:, 0]) * symbol(ev1, pts[:, 1]), rtol=1e-13
    )


def test_symbol_is_periodic():
    ev = SymbolEvaluator(RadialKernel.multiquadric(0.7))
    xi = np.array([0.4, 2.0, 3.0])
    np.testing.assert_allclose(symbol(ev, xi + 3 * TWO_PI), symbol(ev, xi), rtol=1e-12)
    np.testing.assert_allclose(symbol(ev, -xi), symbol(ev, xi), rtol=1e-14)


def test_symbol_pole_at_lattice():
    ev = SymbolEvaluator(RadialKernel.multiquadric(1.0))
    with pytest.raises(PoleError):
        symbol(ev, 0.0)
    with pytest.raises(PoleError):
        symbol(ev, np.array([1.0, TWO_PI * 2]))
    with pytest.raises(PoleError):
        symbol(SymbolEvaluator(RadialKernel.distance(), 2), [0.0, 0.0])
    assert symbol(SymbolEvaluator(RadialKernel.gaussian(1.0)), 0.0) > 0


def test_log_symbol_survives_underflow():
    ev = SymbolEvaluator(RadialKernel.multiquadric(300.0))
    val = log_abs_symbol(ev, math.pi)
    # leading terms: two equal k = 0, -1 contributions
    lead = math.log(2 * 2 * 300 / math.pi) + math.log(special.k1e(300 * math.pi)) - 300 * math.pi
    assert val == pytest.approx(lead, rel=1e-12)


def test_distance_symbol_closed_form_matches_integral_route():
    xi = np.array([0.5, 1.0, 2.5, math.pi])
    closed = symbol(SymbolEvaluator(RadialKernel.distance()), xi)
    np.testing.assert_allclose(closed, -0.5 / np.sin(xi / 2) ** 2, rtol=1e-15)
    via_integral = symbol(SymbolEvaluator(RadialKernel.norm_power(1.0)), xi)
    np.testing.assert_allclose(via_integral, closed, rtol=1e-10)


def test_power_symbol_two_dimensions_against_lattice_sum():
    x = np.array([1.0, 2.0])
    k = np.arange(-400, 401)
    X, Y = np.meshgrid(k, k)
    r = np.hypot(x[0] + TWO_PI * X, x[1] + TWO_PI * Y)
    c2 = 4 * math.sqrt(math.pi) * math.gamma(1.5)
    R = TWO_PI * 400.5
    # integral of rho^-3 outside the square of half-side R is 4 sqrt(2) / R
    tail = c2 * 4 * math.sqrt(2) / R / TWO_PI**2
    ref = -c2 * np.sum(r**-3.0) - tail
    val = symbol(SymbolEvaluator(RadialKernel.distance(), 2), x)
    assert val == pytest.approx(ref, rel=2e-5)


def test_mq_symbol_modulus_minimised_at_pi():
    ev = SymbolEvaluator(RadialKernel.multiquadric(1.0))
    xi = np.linspace(0, TWO_PI, 10_001)[1:-1]
    vals = np.abs(symbol(ev, xi))
    step = xi[1] - xi[0]
    assert abs(xi[np.argmin(vals)] - math.pi) <= step


def test_mq_symbol_continuity_by_sampling():
    ev = SymbolEvaluator(RadialKernel.multiquadric(1.0))
    xi = np.linspace(0.5, TWO_PI - 0.5, 20_001)
    vals = symbol(ev, xi)
    step = xi[1] - xi[0]
    # bounded difference quotients and tiny second differences
    assert np.max(np.abs(np.diff(vals))) < 40 * step
    assert np.max(np.abs(np.diff(vals, 2))) < 1e3 * step**2


def test_tail_tolerance_is_honoured_for_slow_decay():
    c = 0.05
    ev = SymbolEvaluator(RadialKernel.multiquadric(c), tail_tol=1e-14)
    xi = np.array([1.0, 3.0])
    ref = brute_mq_symbol(c, xi, K=3000)
    np.testing.assert_allclose(symbol(ev, xi), ref, rtol=1e-13)


# ------------------------------------------------------------- optimal bound
@pytest.mark.parametrize("c, value", [(1.0, 4.319455e-2), (5.0, 3.104941e-7)])
def test_optimal_bound_examples(c, value):
    assert sig6(optimal_bound(RadialKernel.multiquadric(c))) == sig6(value)


def test_optimal_bound_decreasing_in_c():
    vals = [optimal_bound(RadialKernel.multiquadric(c)) for c in (1, 2, 3, 4, 5)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 10.0, 15.0])
def test_optimal_bound_series_matches_symbol(c):
    kern = RadialKernel.multiquadric(c)
    via_symbol = abs(symbol(SymbolEvaluator(kern), math.pi))
    assert optimal_bound(kern) == pytest.approx(via_symbol, rel=1e-13)


def test_optimal_bound_multivariate_multiquadric():
    k = np.arange(-40, 41)
    X, Y = np.meshgrid(k, k)
    r = np.hypot(math.pi + TWO_PI * X, math.pi + TWO_PI * Y)
    # |phi^| = pi^-1 (2 pi c / r)^{3/2} K_{3/2}(c r) with c = 1
    ref = np.sum((2 * math.pi / r) ** 1.5 * special.kv(1.5, r) / math.pi)
    assert optimal_bound(RadialKernel.multiquadric(1.0), 2) == pytest.approx(ref, rel=1e-13)


def test_optimal_bound_distance_and_gaussian():
    assert optimal_bound(RadialKernel.distance(), 1) == pytest.approx(0.5, rel=1e-15)
    m, _ = gaussian_extrema(1.0)
    assert optimal_bound(RadialKernel.gaussian(1.0)) == pytest.approx(m, rel=1e-13)
    with pytest.raises(UnsupportedError):
        optimal_bound(RadialKernel.multiquadric(1.0), 4)


# ------------------------------------------------------------- Gaussian extrema
def test_gaussian_extrema_match_symbol():
    ev = SymbolEvaluator(RadialKernel.gaussian(1.0))
    m, M = gaussian_extrema(1.0, 1)
    assert m == pytest.approx(float(symbol(ev, math.pi)), rel=1e-13)
    assert M == pytest.approx(float(symbol(ev, 0.0)), rel=1e-13)
    assert m < M


@pytest.mark.parametrize("lam", [0.1, 1.0, 7.0])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_gaussian_maximum_exceeds_central_term(lam, d):
    _, M = gaussian_extrema(lam, d)
    assert M >= (math.pi / lam) ** (d / 2)


def test_gaussian_extrema_tensor_product():
    m1, M1 = gaussian_extrema(1.0, 1)
    m2, M2 = gaussian_extrema(1.0, 2)
    assert m2 == pytest.approx(m1**2, rel=1e-15)
    assert M2 == pytest.approx(M1**2, rel=1e-15)


# ------------------------------------------------------------- Szego
def test_szego_first_estimates():
    kern = RadialKernel.multiquadric(1.0)
    assert sig6(abs(szego_estimates(kern, 100)[0])) == sig6(4.324653e-2)
    assert sig6(abs(szego_estimates(kern, 350)[0])) == sig6(4.319879e-2)


def test_szego_estimates_ordering():
    est = szego_estimates(RadialKernel.multiquadric(1.0), 60)
    assert est.shape == (59,)
    assert np.all(est < 0)
    assert np.all(np.diff(est) < 0)
    assert np.all(np.diff(np.abs(est)) > 0)


def test_szego_estimates_bracket_true_spectrum():
    from gridrbf.matrices import assemble, symmetric_eigenvalues

    n = 80
    kern = RadialKernel.multiquadric(1.0)
    eig = symmetric_eigenvalues(assemble(np.arange(n), kern))
    neg = np.sort(eig[eig < 0])[::-1]
    est = szego_estimates(kern, n)
    # the smallest-modulus estimate is within a fraction of a percent
    assert neg[0] == pytest.approx(est[0], rel=1e-3)
    assert neg.size == n - 1


# ------------------------------------------------------------- scaled products
def test_scaled_bound_limits():
    assert scaled_bound_monotone(10.0) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("r", [0.5, 1.0, 1.7])
def test_scaled_bound_matches_alternating_sum(r):
    k = np.arange(-60, 61)
    ref = np.sum((-1.0) ** k * np.exp(-(k * r) ** 2))
    assert scaled_bound_monotone(r) == pytest.approx(ref, rel=1e-12)


def test_scaled_bound_increasing():
    assert scaled_bound_monotone(0.5) < scaled_bound_monotone(1.0)
    rs = np.linspace(0.3, 4.0, 60)
    vals = [scaled_bound_monotone(r) for r in rs]
    assert all(a < b for a, b in zip(vals, vals[1:]) if b < 1.0)


# ------------------------------------------------------------- theta routes
@pytest.mark.parametrize("lam", [0.25, 1.0, 3.0])
def test_theta_and_lattice_sum_agree(lam):
    ev = SymbolEvaluator(RadialKernel.gaussian(lam))
    xi = np.linspace(-math.pi, 3 * math.pi, 97)
    np.testing.assert_allclose(gaussian_symbol_theta(lam, xi), symbol(ev, xi), rtol=1e-12)


def test_theta_form_of_periodized_gaussian():
    lam = 0.8
    t = np.linspace(0, 2 * math.pi, 31)
    k = np.arange(-20, 21)
    direct = np.exp(-lam * (t[:, None] + TWO_PI * k) ** 2).sum(axis=1)
    via_theta = (4 * math.pi * lam) ** -0.5 * theta3(t / 2, math.exp(-1 / (4 * lam)))
    np.testing.assert_allclose(via_theta, direct, rtol=1e-12)
