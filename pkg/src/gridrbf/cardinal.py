"""Cardinal functions on the integer grid.

The cardinal function ``chi`` satisfies ``chi(j) = delta_{0j}`` and has
transform ``chi^(xi) = phi^(|xi|) / sigma(xi)``. For the multiquadric,
``chi^`` tends to the indicator of ``[-pi, pi]^d`` as ``c`` grows, so
multiquadric interpolation approaches band-limited (sinc) interpolation.
For the Gaussian, the coefficients of ``chi`` in the basis of shifts
alternate in sign.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .basis import RadialKernel
from .errors import DomainError, ResolutionError, UnsupportedError
from .symbol import SymbolEvaluator, log_abs_symbol, reduce_angle, symbol
from .toeplitz import fft

__all__ = [
    "CardinalTransform",
    "chi_hat",
    "indicator_gap",
    "cardinal_function",
    "sc_interpolate",
    "CoeffSequence",
    "gaussian_cardinal_coeffs",
    "norm_equality_check",
    "multivariate_coeff_product",
]

_TWO_PI = 2.0 * math.pi
# frequency grid: 2^14 trapezoid nodes on [-32 pi, 32 pi)
_PERIODS = 32
_NODES_PER_PERIOD = 512
_RESOLUTION_TOL = 1e-9


@dataclass(frozen=True)
class CardinalTransform:
    """Fourier transform of the cardinal function of ``kernel`` on ``Z^d``."""

    kernel: RadialKernel
    d: int = 1

    def __post_init__(self):
        if self.kernel.kind not in ("multiquadric", "gaussian"):
            raise UnsupportedError("cardinal transforms are provided for the multiquadric and Gaussian")

    @property
    def evaluator(self) -> SymbolEvaluator:
        return SymbolEvaluator(self.kernel, self.d)

    def __call__(self, xi):
        return chi_hat(self, xi)

    def _parts(self, xi):
        """Reduced points, their lattice offsets and log-terms of the periodization."""
        ev = self.evaluator
        pts, shape = ev._as_points(xi)
        red = reduce_angle(pts)
        offset = np.rint((pts - red) / _TWO_PI).astype(int)
        at_lattice = np.all(red == 0.0, axis=1)
        safe = red.copy()
        safe[at_lattice] = math.pi  # placeholder, overwritten below
        shifts, logs = ev.log_terms(safe, exclude=offset)
        return shape, offset, at_lattice, shifts, logs


def _own_index(shifts: np.ndarray, offset: np.ndarray) -> np.ndarray:
    """Column of ``shifts`` equal to each row of ``offset`` (or -1 if outside the sum)."""
    match = np.all(shifts[None, :, :] == offset[:, None, :], axis=-1)
    idx = np.where(match.any(axis=1), match.argmax(axis=1), -1)
    return idx


def _log_ratio(t: CardinalTransform, xi, complement: bool):
    shape, offset, at_lattice, shifts, logs = t._parts(xi)
    log_sigma = special.logsumexp(logs, axis=1)
    idx = _own_index(shifts, offset)
    rows = np.arange(logs.shape[0])
    own = np.where(idx >= 0, logs[rows, np.maximum(idx, 0)], -np.inf)
    if complement:
        others = logs.copy()
        others[rows[idx >= 0], idx[idx >= 0]] = -np.inf
        out = special.logsumexp(others, axis=1) - log_sigma
    else:
        out = own - log_sigma
    at_origin = at_lattice & np.all(offset == 0, axis=1)
    if complement:
        out[at_lattice] = np.where(at_origin[at_lattice], -np.inf, 0.0)
    else:
        out[at_lattice] = np.where(at_origin[at_lattice], 0.0, -np.inf)
    return out.reshape(shape)


def chi_hat(t: CardinalTransform, xi):
    """``phi^(|xi|) / sigma(xi)`` in ``[0, 1]``.

    At lattice points the limit values are used: 1 at the origin, 0 at the
    other points of ``2 pi Z^d``.
    """
    out = np.exp(_log_ratio(t, xi, complement=False))
    return out[()] if out.ndim == 0 else out


def indicator_gap(t: CardinalTransform, xi):
    """``|chi^(xi) - I(xi)|`` with ``I`` the indicator of ``(-pi, pi)^d``.

    Inside the cube the gap is the complementary sum ``1 - chi^`` computed
    without cancellation; outside it is ``chi^`` itself.
    """
    pts, shape = t.evaluator._as_points(xi)
    inside = np.all(np.abs(pts) < math.pi, axis=1).reshape(shape)
    comp = np.exp(_log_ratio(t, xi, complement=True))
    own = np.exp(_log_ratio(t, xi, complement=False))
    out = np.where(inside, comp, own)
    return out[()] if out.ndim == 0 else out


def _mq_chi_grid(c: float, per_period: int) -> tuple[np.ndarray, np.ndarray]:
    """``chi^`` on ``eta_p + 2 pi j`` with ``eta_p = 2 pi p / P`` and ``j in [-16, 16)``.

    Returns ``(eta, values)`` with ``values`` of shape ``(P, 32)``.
    """
    t = CardinalTransform(RadialKernel.multiquadric(c))
    eta = _TWO_PI * np.arange(per_period) / per_period
    j = np.arange(-_PERIODS // 2, _PERIODS // 2)
    xi = eta[:, None] + _TWO_PI * j[None, :]
    vals = np.zeros_like(xi)
    body = slice(1, None)  # eta = 0 handled by the lattice convention
    ev = t.evaluator
    log_sigma = log_abs_symbol(ev, eta[body])
    log_phi = t.kernel.log_abs_transform(np.abs(xi[body]), 1)
    vals[body] = np.exp(log_phi - log_sigma[:, None])
    vals[0, j == 0] = 1.0
    return eta, vals


def _sc_values(c: float, samples: np.ndarray, x: np.ndarray, per_period: int) -> np.ndarray:
    K = samples.size // 2
    if K >= per_period // 2:
        raise ResolutionError("sample range exceeds the frequency-grid alias period")
    eta, vals = _mq_chi_grid(c, per_period)
    edge = max(vals[:, 0].max(), vals[:, -1].max())
    if edge > _RESOLUTION_TOL:
        raise ResolutionError(f"chi^ is {edge:.2e} at the edge of the frequency window")
    j = np.arange(-_PERIODS // 2, _PERIODS // 2)
    xi = eta[:, None] + _TWO_PI * j[None, :]
    # M_x(eta) = sum_j chi^(eta + 2 pi j) exp(i x (eta + 2 pi j))
    M = np.einsum("pj,xpj->xp", vals, np.exp(1j * x[:, None, None] * xi[None, :, :]))
    # chi(x - k) = P^{-1} sum_p M_x(eta_p) exp(-i k eta_p)
    chi_shift = fft(M, axis=-1) / per_period
    k = np.arange(-K, K + 1)
    return (chi_shift[:, k % per_period] @ samples).real


def sc_interpolate(c: float, samples, x) -> np.ndarray:
    """Multiquadric cardinal interpolant ``S_c f(x) = sum_k f(k) chi_c(x - k)``.

    ``chi_c`` is computed from ``chi^_c`` by the trapezoidal rule on ``2^14``
    nodes over ``[-32 pi, 32 pi)``. The result is compared with a grid twice
    as fine and a :class:`ResolutionError` is raised if they differ by more
    than ``1e-9``.

    Parameters
    ----------
    c : float
        Multiquadric shape parameter.
    samples : array_like, length ``2K + 1``
        ``f(-K), ..., f(K)``; ``K`` must be below 256.
    x : array_like
        Evaluation points.
    """
    if not c > 0:
        raise DomainError("shape parameter must be positive")
    samples = np.asarray(samples, dtype=float)
    if samples.ndim != 1 or samples.size % 2 == 0:
        raise DomainError("samples must have odd length 2K + 1")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    coarse = _sc_values(c, samples, x, _NODES_PER_PERIOD)
    fine = _sc_values(c, samples, x, 2 * _NODES_PER_PERIOD)
    gap = np.abs(coarse - fine).max()
    if gap > _RESOLUTION_TOL:
        raise ResolutionError(f"frequency grid too coarse: refinement changed values by {gap:.2e}")
    return fine


def cardinal_function(c: float, x) -> np.ndarray:
    """Multiquadric cardinal function ``chi_c(x)``."""
    return sc_interpolate(c, np.array([1.0]), x)


@dataclass(frozen=True)
class CoeffSequence:
    """Coefficients ``c_{-m..m}`` stored so that ``values[m + k] = c_k``."""

    m: int
    values: np.ndarray

    def __getitem__(self, k: int) -> float:
        if abs(k) > self.m:
            raise DomainError(f"index {k} outside the band |k| <= {self.m}")
        return float(self.values[self.m + k])

    @property
    def sum_abs(self) -> float:
        return float(np.abs(self.values).sum())


def _gaussian_symbol_shifted(lam: float, xi: np.ndarray, tau: float) -> np.ndarray:
    """``sigma(xi - i tau) = sum_n exp(-lam n^2 + n tau) e^{i n xi}`` for real ``xi``."""
    R = math.ceil((tau + math.sqrt(tau * tau + 4.0 * lam * 46.0)) / (2.0 * lam)) + 1
    n = np.arange(-R, R + 1)
    w = np.exp(-lam * n * n + n * tau)
    return np.exp(1j * np.outer(xi, n)) @ w


def gaussian_cardinal_coeffs(lam: float, m: int, nodes: int = 4096) -> CoeffSequence:
    """``c_k = (2 pi)^{-1} int_0^{2 pi} e^{-i k xi} / sigma(xi) d xi`` for ``|k| <= m``.

    ``1 / sigma`` is analytic in the strip ``|Im xi| < lam`` (the nearest
    zeros of ``sigma`` are at ``pi +- i lam``), so ``c_k`` decays like
    ``exp(-k lam)``. To keep relative accuracy where ``c_k`` is far below
    the rounding level of ``1 / sigma``, each ``c_k`` is computed by the
    trapezoidal rule on the shifted contour ``Im xi = -lam k / (k + 1)``.
    At least ``nodes`` points are used, and more when the contour is close
    to a zero.
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    if not 0 <= m <= 64:
        raise DomainError("m must lie in [0, 64]")
    half = np.empty(m + 1)
    for k in range(m + 1):
        tau = lam * k / (k + 1)
        # aliasing from c_{k+N} is about exp(-N (lam - tau)); keep it below 1e-17
        need = math.ceil(40.0 / (lam - tau))
        N = max(nodes, 1 << (need - 1).bit_length())
        xi = _TWO_PI * np.arange(N) / N
        g = np.exp(-1j * k * xi) / _gaussian_symbol_shifted(lam, xi, tau)
        half[k] = math.exp(-k * tau) * float(np.mean(g).real)
    vals = np.concatenate([half[:0:-1], half])
    return CoeffSequence(m, vals)


def norm_equality_check(lam: float, m: int) -> tuple[float, float, float]:
    """Compare ``sum |c_k|`` with ``1 / sigma(pi)``.

    Returns
    -------
    sum_abs, sigma_pi_inv, rel_gap
    """
    coeffs = gaussian_cardinal_coeffs(lam, m)
    inv = 1.0 / float(symbol(SymbolEvaluator(RadialKernel.gaussian(lam)), math.pi))
    total = coeffs.sum_abs
    return total, inv, abs(total - inv) / inv


def multivariate_coeff_product(k, univariate: CoeffSequence) -> float:
    """Tensor-product coefficient ``c_k = prod_j c_{k_j}``."""
    out = 1.0
    for kj in np.atleast_1d(k):
        out *= univariate[int(kj)]
    return out
