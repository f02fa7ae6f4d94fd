"""Symbol functions of radial kernels on the integer grid.

The symbol ``sigma(xi) = sum_k phi^(|xi + 2 pi k|)`` is the 2pi-periodization
of a kernel's generalized transform. Its range controls the spectrum of the
bi-infinite Toeplitz matrix ``(phi(|j - k|))``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .basis import RadialKernel, bessel_k, theta3, _check_dim
from .errors import DomainError, PoleError, UnsupportedError

__all__ = [
    "SymbolEvaluator",
    "symbol",
    "log_abs_symbol",
    "optimal_bound",
    "gaussian_extrema",
    "szego_estimates",
    "scaled_bound_monotone",
    "gaussian_symbol_theta",
    "reduce_angle",
]

_TWO_PI = 2.0 * math.pi
_MAX_SHELLS = 400


def reduce_angle(xi: np.ndarray) -> np.ndarray:
    """Map every coordinate into ``(-pi, pi]``."""
    red = np.mod(xi + math.pi, _TWO_PI) - math.pi
    red[red == -math.pi] = math.pi
    return red


def _shell(j: int, d: int) -> np.ndarray:
    """Integer vectors with sup norm exactly ``j``."""
    if j == 0:
        return np.zeros((1, d), dtype=int)
    rng = range(-j, j + 1)
    pts = np.array(list(itertools.product(rng, repeat=d)), dtype=int)
    return pts[np.abs(pts).max(axis=1) == j]


@dataclass(frozen=True)
class SymbolEvaluator:
    """Evaluate ``sigma(xi)`` for a kernel in dimension ``d``.

    Lattice sums are accumulated shell by shell (sup-norm shells of
    ``Z^d``) until a geometric bound on the remaining shells drops below
    ``tail_tol`` times the modulus of the partial sum. Power-law kernels
    decay only algebraically and are summed through a theta-function
    integral instead (closed form for the distance kernel in one dimension).

    Parameters
    ----------
    kernel : RadialKernel
    d : int
        Dimension, 1 to 5.
    tail_tol : float
        Relative truncation tolerance.
    """

    kernel: RadialKernel
    d: int = 1
    tail_tol: float = 1e-15

    def __post_init__(self):
        _check_dim(self.d)
        if not self.tail_tol > 0:
            raise DomainError("tail_tol must be positive")
        if self.kernel.kind == "multiquadric" and self.kernel.c == 0:
            raise UnsupportedError("use the distance kernel for c = 0")

    @property
    def parity_sign(self) -> int:
        return self.kernel.sign

    @property
    def has_pole(self) -> bool:
        return self.kernel.kind != "gaussian"

    # ---------------------------------------------------------------- helpers
    def _as_points(self, xi) -> tuple[np.ndarray, tuple]:
        arr = np.asarray(xi, dtype=float)
        if self.d == 1:
            shape = arr.shape
            pts = arr.reshape(-1, 1)
        else:
            if arr.shape[-1] != self.d:
                raise DomainError(f"last axis of xi must have length {self.d}")
            shape = arr.shape[:-1]
            pts = arr.reshape(-1, self.d)
        return pts, shape

    def _decay_ratio(self, j: int) -> float:
        """Upper bound for the ratio of shell ``j+1`` to shell ``j`` tail terms."""
        d = self.d
        growth = ((2 * j + 3) / (2 * j + 1)) ** (d - 1)
        k = self.kernel
        if k.kind == "gaussian":
            return growth * math.exp(-(math.pi ** 2) * 2 * j / k.lam)
        # |phi^(r + 2pi)| <= exp(-2 pi c) |phi^(r)| for the multiquadric family
        return growth * math.exp(-_TWO_PI * k.c)

    def _log_shell_bound(self, j: int) -> float:
        """Log of a bound on the sum of ``|phi^|`` over shell ``j >= 1`` for reduced ``xi``."""
        d = self.d
        count = (2 * j + 1) ** d - (2 * j - 1) ** d
        r = _TWO_PI * (j - 0.5)
        return math.log(count) + float(self.kernel.log_abs_transform(r, d))

    def log_terms(self, pts: np.ndarray, exclude: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Lattice shifts and ``log |phi^(|xi + 2 pi k|)|`` for reduced points.

        Parameters
        ----------
        pts : ndarray, shape (npts, d)
            Points already reduced to ``(-pi, pi]^d``.
        exclude : ndarray of int, shape (npts, d), optional
            One shift per point whose term is left out of the stopping test.
            The shift is always included in the output, and the tail is then
            small relative to the sum of the remaining terms.

        Returns
        -------
        shifts : ndarray of int, shape (nk, d)
        logs : ndarray, shape (npts, nk)
            Enough shells are included for the omitted tail to be below
            ``tail_tol`` times the retained sum at every point.
        """
        kern, d = self.kernel, self.d
        if kern.is_power_law:
            raise UnsupportedError("power-law transforms are not summed term by term")
        shells, blocks = [], []
        log_total = np.full(pts.shape[0], -np.inf)
        floor = self._gaussian_radius() if kern.kind == "gaussian" else 1
        if exclude is not None:
            floor = max(floor, int(np.abs(exclude).max(initial=0)) + 1)
        j = 0
        while True:
            ks = _shell(j, d)
            rad = np.linalg.norm(pts[:, None, :] + _TWO_PI * ks[None, :, :], axis=-1)
            logs = kern.log_abs_transform(rad, d)
            shells.append(ks)
            blocks.append(logs)
            counted = logs
            if exclude is not None:
                hit = np.all(ks[None, :, :] == exclude[:, None, :], axis=-1)
                counted = np.where(hit, -np.inf, logs)
            log_total = np.logaddexp(log_total, special.logsumexp(counted, axis=1))
            j += 1
            if j > _MAX_SHELLS:
                raise UnsupportedError("lattice sum did not reach the requested tolerance")
            rho = self._decay_ratio(j)
            if rho >= 1.0 or j < floor:
                continue
            log_tail = self._log_shell_bound(j) - math.log1p(-rho)
            if np.all(log_tail <= math.log(self.tail_tol) + log_total):
                break
        return np.concatenate(shells), np.concatenate(blocks, axis=1)

    def _lattice_log_sum(self, pts: np.ndarray) -> np.ndarray:
        _, logs = self.log_terms(pts)
        return special.logsumexp(logs, axis=1)

    def _lattice_sum(self, pts: np.ndarray) -> np.ndarray:
        return self.kernel.sign * np.exp(self._lattice_log_sum(pts))

    def _gaussian_radius(self) -> int:
        lam = self.kernel.lam
        return math.ceil(math.sqrt(4.0 * lam * math.log(1.0 / self.tail_tol)) / _TWO_PI) + 2

    def _power_law_sum(self, pts: np.ndarray) -> np.ndarray:
        k = self.kernel
        alpha = k.exponent
        d = self.d
        if k.kind == "distance" and d == 1:
            return -0.5 / np.sin(0.5 * pts[:, 0]) ** 2
        s = alpha + d
        const = (
            -(2.0 ** (alpha + d))
            * math.pi ** (0.5 * d)
            * math.gamma(0.5 * s)
            / abs(math.gamma(-0.5 * alpha))
        )
        # sum_k |x + 2 pi k|^{-s} = Gamma(s/2)^{-1} int_0^inf t^{s/2-1} prod_i g(t, x_i) dt
        out = np.empty(pts.shape[0])
        for idx, x in enumerate(pts):
            val = _periodized_power(x, s)
            out[idx] = const * val / math.gamma(0.5 * s)
        return out

    # --------------------------------------------------------------- public
    def __call__(self, xi):
        return symbol(self, xi)


def _heat_kernel_1d(t: float, x: float) -> float:
    """``sum_k exp(-t (x + 2 pi k)^2)`` using whichever side converges fastest."""
    if t >= 1.0:
        ks = np.arange(-3, 4)
        return float(np.exp(-t * (x + _TWO_PI * ks) ** 2).sum())
    js = np.arange(1, 1 + int(math.ceil(math.sqrt(4.0 * t * 40.0))) + 2)
    series = 1.0 + 2.0 * np.sum(np.exp(-js * js / (4.0 * t)) * np.cos(js * x))
    return series / (_TWO_PI) * math.sqrt(math.pi / t)


def _periodized_power(x: np.ndarray, s: float) -> float:
    d = x.size

    def integrand(t):
        prod = 1.0
        for xi in x:
            prod *= _heat_kernel_1d(t, float(xi))
        return t ** (0.5 * s - 1.0) * prod

    # near t = 0 the product behaves like (4 pi t)^{-d/2}; subtract it analytically
    def smooth(t):
        return integrand(t) - t ** (0.5 * s - 1.0) * (4.0 * math.pi * t) ** (-0.5 * d)

    split = 1.0
    sing = (4.0 * math.pi) ** (-0.5 * d) * split ** (0.5 * (s - d)) / (0.5 * (s - d))
    lo, _ = integrate.quad(smooth, 0.0, split, epsabs=0, epsrel=1e-13, limit=200)
    hi, _ = integrate.quad(integrand, split, np.inf, epsabs=0, epsrel=1e-13, limit=200)
    return lo + sing + hi


def symbol(ev: SymbolEvaluator, xi):
    """Evaluate the symbol at ``xi``.

    Parameters
    ----------
    ev : SymbolEvaluator
    xi : float or array_like
        Scalar or array of points for ``d = 1``; array with trailing axis of
        length ``d`` otherwise.

    Returns
    -------
    float or ndarray

    Raises
    ------
    PoleError
        If a point is congruent to the origin mod ``2 pi`` and the kernel
        transform has a pole there.
    """
    pts, shape = ev._as_points(xi)
    red = reduce_angle(pts)
    if ev.has_pole and np.any(np.all(red == 0.0, axis=1)):
        raise PoleError("symbol has a pole at lattice points 2 pi Z^d")
    if ev.kernel.is_power_law:
        out = ev._power_law_sum(red)
    else:
        out = ev._lattice_sum(red)
    out = out.reshape(shape)
    return out[()] if out.ndim == 0 else out


def log_abs_symbol(ev: SymbolEvaluator, xi):
    """``log |sigma(xi)|``, representable even when ``sigma`` underflows."""
    pts, shape = ev._as_points(xi)
    red = reduce_angle(pts)
    if ev.has_pole and np.any(np.all(red == 0.0, axis=1)):
        raise PoleError("symbol has a pole at lattice points 2 pi Z^d")
    if ev.kernel.is_power_law:
        out = np.log(np.abs(ev._power_law_sum(red)))
    else:
        out = ev._lattice_log_sum(red)
    out = out.reshape(shape)
    return out[()] if out.ndim == 0 else out


def optimal_bound(kernel: RadialKernel, d: int = 1) -> float:
    """``|sigma(pi e)|``, the least bound on eigenvalue moduli over grid subsets.

    For the univariate multiquadric the value is summed from the fast series
    ``(4c/pi) sum_k K_1((2k+1) c pi) / (2k+1)``, stopping once a term is below
    ``1e-18`` of the running total.
    """
    if d > 3:
        raise UnsupportedError("optimal_bound supports d <= 3")
    if kernel.kind == "multiquadric" and d == 1:
        c = kernel.c
        if not c > 0:
            raise DomainError("multiquadric optimal bound needs c > 0")
        # work with exp(c pi) K_1 to stay representable for large c
        total = 0.0
        k = 0
        while True:
            m = 2 * k + 1
            term = float(bessel_k(1, m * c * math.pi, scaled=True)) * math.exp(-(m - 1) * c * math.pi) / m
            total += term
            if term < 1e-18 * total:
                break
            k += 1
        return 4.0 * c / math.pi * total * math.exp(-c * math.pi)
    if kernel.kind not in ("multiquadric", "distance", "gaussian"):
        raise UnsupportedError("optimal_bound is defined for Gaussian, multiquadric and distance kernels")
    ev = SymbolEvaluator(kernel, d)
    return abs(float(symbol(ev, np.full(d, math.pi) if d > 1 else math.pi)))


def gaussian_extrema(lam: float, d: int = 1) -> tuple[float, float]:
    """Minimum ``m = sigma(pi e)`` and maximum ``M = sigma(0)`` of the Gaussian symbol.

    Both come from the explicit one-dimensional sums raised to the power ``d``
    (the symbol is a tensor product).
    """
    if not lam > 0:
        raise DomainError("lambda must be positive")
    _check_dim(d)
    K = math.ceil(math.sqrt(4.0 * lam * 40.0) / _TWO_PI) + 3
    ks = np.arange(-K, K + 1)
    scale = math.sqrt(math.pi / lam)
    m1 = scale * np.sum(np.exp(-((math.pi + _TWO_PI * ks) ** 2) / (4.0 * lam)))
    M1 = scale * np.sum(np.exp(-((math.pi * ks) ** 2) / lam))
    return float(m1 ** d), float(M1 ** d)


def szego_estimates(kernel: RadialKernel, n: int, d: int = 1) -> np.ndarray:
    """Szegő-type eigenvalue estimates ``sigma(pi + k pi / n)`` for ``k = 1..n-1``.

    The values are returned with their sign. For the multiquadric they are
    negative, decrease with ``k`` and grow in modulus.
    """
    if d != 1:
        raise UnsupportedError("szego_estimates is univariate")
    if n < 2:
        raise DomainError("n must be at least 2")
    ev = SymbolEvaluator(kernel, 1)
    k = np.arange(1, n)
    return np.asarray(symbol(ev, math.pi + k * math.pi / n), dtype=float)


def scaled_bound_monotone(r: float) -> float:
    """Minimum of the scaled Gaussian symbol on the grid ``r Z``.

    ``prod_k (1 - e^{-2 k r^2}) (1 - e^{-(2k-1) r^2})^2``, which increases with ``r``.
    """
    if not r > 0:
        raise DomainError("grid spacing must be positive")
    q = math.exp(-r * r)
    out = 1.0
    k = 1
    while True:
        a = q ** (2 * k)
        b = q ** (2 * k - 1)
        if b < 1e-17:
            break
        out *= (1.0 - a) * (1.0 - b) ** 2
        k += 1
    return out


def gaussian_symbol_theta(lam: float, xi):
    """Univariate Gaussian symbol from the theta product: ``theta3(xi/2, e^{-lam})``."""
    if not lam > 0:
        raise DomainError("lambda must be positive")
    return theta3(np.asarray(xi, dtype=float) / 2.0, math.exp(-lam))
