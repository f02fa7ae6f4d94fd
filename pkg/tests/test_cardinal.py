import math

import numpy as np
import pytest
from scipy import special

from gridrbf.basis import RadialKernel
from gridrbf.cardinal import (
    CardinalTransform,
    CoeffSequence,
    cardinal_function,
    chi_hat,
    gaussian_cardinal_coeffs,
    indicator_gap,
    multivariate_coeff_product,
    norm_equality_check,
    sc_interpolate,
)
from gridrbf.errors import DomainError, ResolutionError, UnsupportedError
from gridrbf.krylov import build_gaussian_precond
from gridrbf.symbol import SymbolEvaluator, gaussian_symbol_theta, symbol

TWO_PI = 2 * math.pi
CS = [1.0, 2.0, 4.0, 8.0, 16.0]


def mq(c):
    return CardinalTransform(RadialKernel.multiquadric(c))


def brute_chi_hat(c, xi, K=200):
    """Oracle: ratio of K_1 terms with scipy, for moderate c."""
    k = np.arange(-K, K + 1)
    r = np.abs(xi + TWO_PI * k)
    terms = special.kv(1, c * r) / r
    return (special.kv(1, c * abs(xi)) / abs(xi)) / terms.sum()


# ------------------------------------------------------------- chi_hat
def test_chi_hat_lattice_convention():
    t = mq(1.0)
    assert chi_hat(t, 0.0) == 1.0
    assert chi_hat(t, TWO_PI) == 0.0
    assert chi_hat(t, -4 * math.pi) == 0.0


@pytest.mark.parametrize("c", [0.5, 1.0, 3.0])
def test_chi_hat_against_bessel_ratio(c):
    for xi in (0.3, 2.0, 3.5, 7.0, -9.0):
        assert chi_hat(mq(c), xi) == pytest.approx(brute_chi_hat(c, xi), rel=1e-12)


@pytest.mark.parametrize("c", CS)
def test_chi_hat_in_unit_interval(c):
    xi = np.linspace(-20, 20, 4001)
    v = chi_hat(mq(c), xi)
    assert np.all(v >= 0) and np.all(v <= 1)


@pytest.mark.parametrize("c", [1.0, 4.0, 16.0])
def test_partition_of_unity(c):
    t = mq(c)
    rng = np.random.default_rng(int(c))
    xi = rng.uniform(-math.pi, math.pi, 50)
    k = np.arange(-60, 61)
    total = chi_hat(t, xi[:, None] + TWO_PI * k[None, :]).sum(axis=1)
    assert np.all(total >= 1 - 1e-10) and np.all(total <= 1 + 1e-14)


def test_partition_of_unity_gaussian():
    t = CardinalTransform(RadialKernel.gaussian(1.0))
    xi = np.linspace(-3, 3, 31)
    k = np.arange(-30, 31)
    total = chi_hat(t, xi[:, None] + TWO_PI * k[None, :]).sum(axis=1)
    np.testing.assert_allclose(total, 1.0, atol=1e-10)


def test_decay_bound_outside_cube():
    for c in (1.0, 2.0, 4.0):
        t = mq(c)
        for xi in (3.5, 5.0, 8.0, -11.0, 14.0):
            k0 = -round(xi / TWO_PI)
            near = abs(xi + TWO_PI * k0)
            assert chi_hat(t, xi) <= math.exp(-c * (abs(xi) - near)) * (1 + 1e-12)


def test_chi_hat_increases_with_c_inside():
    vals = [chi_hat(mq(c), math.pi / 2) for c in (1, 2, 4, 8)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1


@pytest.mark.parametrize("xi", [0.5, -0.5, 1.5, -1.5, 3.0, -3.0, 4.0, -4.0, 5.0, -5.0])
def test_indicator_convergence(xi):
    gaps = [indicator_gap(mq(c), xi) for c in CS]
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    assert all(g > 0 for g in gaps)


def test_indicator_gap_matches_difference_when_representable():
    t = mq(1.0)
    for xi in (0.5, 2.0, 4.5):
        inside = abs(xi) < math.pi
        ref = 1 - chi_hat(t, xi) if inside else chi_hat(t, xi)
        assert indicator_gap(t, xi) == pytest.approx(ref, rel=1e-12)


def test_indicator_gap_does_not_cancel():
    # for large c, 1 - chi_hat rounds to zero but the gap is still resolved
    g = indicator_gap(mq(16.0), 0.5)
    assert 0 < g < 1e-30


def test_two_dimensional_chi_hat():
    t = CardinalTransform(RadialKernel.multiquadric(1.0), 2)
    v = chi_hat(t, np.array([[0.0, 0.0], [0.5, 0.5], [5.0, 0.0]]))
    assert v[0] == 1.0 and 0 < v[2] < v[1] < 1


def test_unsupported_kernel():
    with pytest.raises(UnsupportedError):
        CardinalTransform(RadialKernel.distance())


# ------------------------------------------------------------- physical space
def test_cardinality_at_integers():
    j = np.arange(-5, 6, dtype=float)
    vals = cardinal_function(1.0, j)
    expected = (j == 0).astype(float)
    np.testing.assert_allclose(vals, expected, atol=1e-10)


def test_delta_samples_reproduce():
    samples = np.zeros(21)
    samples[10] = 1.0
    x = np.arange(-10, 11, dtype=float)
    np.testing.assert_allclose(sc_interpolate(2.0, samples, x), samples, atol=1e-10)


def test_cardinal_function_even_and_real():
    x = np.array([0.3, 1.7, 4.2])
    np.testing.assert_allclose(cardinal_function(1.0, x), cardinal_function(1.0, -x), atol=1e-12)


def test_sinc_error_decreases_with_c():
    K = 200
    k = np.arange(-K, K + 1)
    x = np.linspace(-5, 5, 41)
    errs = []
    for c in (1.0, 2.0, 4.0, 8.0):
        approx = sc_interpolate(c, np.sinc(k), x)
        errs.append(np.abs(approx - np.sinc(x)).max())
    assert all(a > b for a, b in zip(errs, errs[1:]))


def test_cosine_error_decreases_with_c():
    K = 200
    k = np.arange(-K, K + 1)
    x = np.linspace(-5, 5, 41)
    errs = []
    for c in (1.0, 2.0, 4.0, 8.0):
        approx = sc_interpolate(c, np.cos(k / 2), x)
        errs.append(np.abs(approx - np.cos(x / 2)).max())
    assert all(a > b for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 1e-10


def test_sc_interpolate_errors():
    with pytest.raises(DomainError):
        sc_interpolate(1.0, np.ones(4), [0.0])
    with pytest.raises(DomainError):
        sc_interpolate(0.0, np.ones(3), [0.0])
    with pytest.raises(ResolutionError):
        sc_interpolate(1.0, np.ones(2 * 300 + 1), [0.0])
    with pytest.raises(ResolutionError):
        sc_interpolate(0.05, np.ones(3), [0.0])


# ------------------------------------------------------------- Gaussian coefficients
@pytest.fixture(scope="module")
def coeffs():
    return gaussian_cardinal_coeffs(1.0, 64)


def test_gaussian_coefficient_values(coeffs):
    assert coeffs[0] == pytest.approx(1.4301, abs=1e-4)
    assert coeffs[1] == pytest.approx(-0.59563, abs=1e-4)


def test_gaussian_coefficients_alternate_and_even(coeffs):
    k = np.arange(-64, 65)
    v = coeffs.values
    assert np.all((-1.0) ** k * v >= 0)
    assert np.max(np.abs(v - v[::-1])) <= 1e-14


@pytest.mark.parametrize("k", [10, 40, 64])
def test_tail_coefficients_against_high_precision(coeffs, k):
    mpmath = pytest.importorskip("mpmath")
    with mpmath.workdps(60):
        N = 256
        q = mpmath.exp(-1)
        total = mpmath.mpf(0)
        for p in range(N):
            xi = 2 * mpmath.pi * p / N
            total += mpmath.cos(k * xi) / mpmath.jtheta(3, xi / 2, q)
        ref = float(total / N)
    assert coeffs[k] == pytest.approx(ref, rel=1e-10)


def test_quadrature_matches_finite_section(coeffs):
    section = build_gaussian_precond(64, 9).coeffs
    assert np.max(np.abs(coeffs.values[64 - 9 : 64 + 10] - section)) <= 1e-5


def test_coefficients_invert_symbol(coeffs):
    xi = np.linspace(0, TWO_PI, 50)
    k = np.arange(-64, 65)
    series = np.cos(np.outer(xi, k)) @ coeffs.values
    sig = symbol(SymbolEvaluator(RadialKernel.gaussian(1.0)), xi)
    np.testing.assert_allclose(series * sig, 1.0, atol=1e-12)


def test_norm_equality(coeffs):
    total, inv, gap = norm_equality_check(1.0, 64)
    assert gap <= 1e-8
    k = np.arange(-64, 65)
    assert np.sum((-1.0) ** k * coeffs.values) == pytest.approx(coeffs.sum_abs, rel=1e-15)
    assert inv == pytest.approx(1 / gaussian_symbol_theta(1.0, math.pi), rel=1e-12)


def test_coeff_sequence_indexing(coeffs):
    assert coeffs[3] == coeffs[-3]
    with pytest.raises(DomainError):
        coeffs[65]


def test_multivariate_product(coeffs):
    assert multivariate_coeff_product((0, 0), coeffs) == pytest.approx(coeffs[0] ** 2, rel=1e-15)
    v = multivariate_coeff_product((1, 2), coeffs)
    assert v < 0
    grid = np.array([[multivariate_coeff_product((a, b), coeffs) for b in range(-64, 65)] for a in range(-64, 65)])
    assert np.abs(grid).sum() == pytest.approx(coeffs.sum_abs**2, rel=1e-13)
    with pytest.raises(DomainError):
        multivariate_coeff_product((0, 70), coeffs)


def test_gaussian_coeff_domain():
    with pytest.raises(DomainError):
        gaussian_cardinal_coeffs(-1.0, 3)
    with pytest.raises(DomainError):
        gaussian_cardinal_coeffs(1.0, 65)
    seq = CoeffSequence(0, np.array([2.0]))
    assert seq.sum_abs == 2.0


def test_chi_hat_far_outside_is_resolved():
    # own term is ~exp(-300) relative to the sum but still representable
    v = chi_hat(mq(16.0), 20.0)
    assert 0 < v < 1e-120
    k0 = -round(20.0 / TWO_PI)
    near = abs(20.0 + TWO_PI * k0)
    assert v <= math.exp(-16.0 * (20.0 - near)) * (1 + 1e-12)
