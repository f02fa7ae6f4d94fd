"""Radial kernels, their generalized Fourier transforms and special functions.

Fourier transforms use the convention ``f^(xi) = int f(x) exp(-i x.xi) dx`` so
that the Gaussian ``exp(-lam r^2)`` has transform ``(pi/lam)^{d/2} exp(-r^2/4 lam)``.
Conditionally negative definite kernels (multiquadric, norm powers) have
*generalized* transforms, valid away from the origin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, PoleError, UnsupportedError

__all__ = [
    "RadialKernel",
    "eval_kernel",
    "bessel_k",
    "mq_transform",
    "gaussian_transform",
    "theta3",
    "MAX_DIM",
]

MAX_DIM = 5
_KINDS = ("gaussian", "multiquadric", "inverse_multiquadric", "norm_power", "distance")
_MAX_BESSEL_ORDER = 10


def _is_half_integer(order: float) -> bool:
    return abs(2 * order - round(2 * order)) < 1e-12 and round(2 * order) % 2 == 1


def _check_order(order: float) -> None:
    twice = 2 * order
    if order < 0 or abs(twice - round(twice)) > 1e-12 or order > _MAX_BESSEL_ORDER:
        raise UnsupportedError(
            f"bessel_k supports integer and half-integer orders in [0, {_MAX_BESSEL_ORDER}], got {order}"
        )


def _half_integer_closed_form(n: int, x: np.ndarray) -> np.ndarray:
    """Scaled ``e^x K_{n+1/2}(x)`` from the terminating series."""
    total = np.zeros_like(x)
    for k in range(n + 1):
        coef = math.factorial(n + k) / (math.factorial(k) * math.factorial(n - k))
        total = total + coef * (2.0 * x) ** (-k)
    return np.sqrt(np.pi / (2.0 * x)) * total


def bessel_k(order: float, x, scaled: bool = False, recurrence: bool = False):
    """Modified Bessel function of the second kind ``K_order(x)``.

    Parameters
    ----------
    order : float
        Integer or half-integer order, at most 10.
    x : float or array_like
        Positive arguments.
    scaled : bool
        Return ``exp(x) K_order(x)``, which avoids underflow for large ``x``.
    recurrence : bool
        For half-integer orders, build the value by upward recurrence from
        ``K_{1/2}`` and ``K_{3/2}`` instead of the terminating closed form.
        Integer orders always use upward recurrence from ``K_0`` and ``K_1``.

    Returns
    -------
    float or ndarray

    Raises
    ------
    DomainError
        If any ``x <= 0``.
    UnsupportedError
        For orders that are not (half-)integers in ``[0, 10]``.
    """
    _check_order(order)
    xa = np.asarray(x, dtype=float)
    if np.any(~(xa > 0)):
        raise DomainError("bessel_k requires x > 0")
    if _is_half_integer(order):
        n = int(round(order - 0.5))
        if recurrence and n >= 2:
            lo = _half_integer_closed_form(0, xa)
            hi = _half_integer_closed_form(1, xa)
            nu = 1.5
            for _ in range(n - 1):
                lo, hi = hi, lo + (2.0 * nu / xa) * hi
                nu += 1.0
            out = hi
        else:
            out = _half_integer_closed_form(n, xa)
    else:
        n = int(round(order))
        lo = special.k0e(xa)
        hi = special.k1e(xa)
        if n == 0:
            out = lo
        else:
            for nu in range(1, n):
                lo, hi = hi, lo + (2.0 * nu / xa) * hi
            out = hi
    if not scaled:
        out = out * np.exp(-xa)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class RadialKernel:
    """A radial basis function ``phi(r)`` with its parameters.

    Use the classmethod constructors rather than the raw initializer.

    Attributes
    ----------
    kind : str
        One of ``gaussian``, ``multiquadric``, ``inverse_multiquadric``,
        ``norm_power`` and ``distance``.
    lam : float
        Gaussian rate, ``phi(r) = exp(-lam r^2)``.
    c : float
        Multiquadric shape parameter.
    alpha : float
        Exponent of ``phi(r) = r^alpha``.
    """

    kind: str
    lam: float = 1.0
    c: float = 1.0
    alpha: float = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "gaussian" and not self.lam > 0:
            raise DomainError("Gaussian kernel requires lambda > 0")
        if self.kind in ("multiquadric", "inverse_multiquadric") and not self.c >= 0:
            raise DomainError("multiquadric kernels require c >= 0")
        if self.kind == "norm_power" and not 0 < self.alpha < 2:
            raise DomainError("norm power kernel requires 0 < alpha < 2")

    @classmethod
    def gaussian(cls, lam: float = 1.0) -> "RadialKernel":
        return cls("gaussian", lam=float(lam))

    @classmethod
    def multiquadric(cls, c: float = 1.0) -> "RadialKernel":
        return cls("multiquadric", c=float(c))

    @classmethod
    def inverse_multiquadric(cls, c: float = 1.0) -> "RadialKernel":
        return cls("inverse_multiquadric", c=float(c))

    @classmethod
    def norm_power(cls, alpha: float) -> "RadialKernel":
        return cls("norm_power", alpha=float(alpha))

    @classmethod
    def distance(cls) -> "RadialKernel":
        return cls("distance", alpha=1.0)

    # ------------------------------------------------------------------ values
    def __call__(self, r):
        return eval_kernel(self, r)

    @property
    def sign(self) -> int:
        """Sign of the (generalized) Fourier transform away from the origin."""
        return 1 if self.kind in ("gaussian", "inverse_multiquadric") else -1

    @property
    def is_power_law(self) -> bool:
        return self.kind in ("norm_power", "distance")

    @property
    def exponent(self) -> float:
        """Exponent for the power-law kernels."""
        return 1.0 if self.kind == "distance" else self.alpha

    def transform(self, r, d: int = 1):
        """Generalized Fourier transform ``phi^(r)`` in dimension ``d``."""
        r = np.asarray(r, dtype=float)
        _check_dim(d)
        if self.kind == "gaussian":
            return gaussian_transform(self.lam, d, r)
        if self.kind == "multiquadric":
            return mq_transform(self.c, d, r)
        return self.sign * np.exp(self.log_abs_transform(r, d))

    def log_abs_transform(self, r, d: int = 1):
        """``log |phi^(r)|``, finite even where the transform under- or overflows."""
        r = np.asarray(r, dtype=float)
        _check_dim(d)
        if self.kind == "gaussian":
            if np.any(r < 0):
                raise DomainError("transform radius must be nonnegative")
            return 0.5 * d * math.log(math.pi / self.lam) - r * r / (4.0 * self.lam)
        _check_radius(r)
        if self.kind == "multiquadric":
            if self.c == 0:
                return _log_abs_power_transform(1.0, d, r)
            nu = 0.5 * (d + 1)
            cr = self.c * r
            return (
                -math.log(math.pi)
                + nu * np.log(2.0 * math.pi * self.c / r)
                + np.log(bessel_k(nu, cr, scaled=True))
                - cr
            )
        if self.kind == "inverse_multiquadric":
            if self.c == 0:
                raise UnsupportedError("inverse multiquadric transform needs c > 0")
            # (r^2+c^2)^beta with beta = -1/2
            nu = 0.5 * (d - 1)
            cr = self.c * r
            const = 0.5 * d * math.log(2.0 * math.pi) + 0.5 * math.log(2.0) - 0.5 * math.log(math.pi)
            return const + nu * np.log(self.c / r) + np.log(bessel_k(nu, cr, scaled=True)) - cr
        return _log_abs_power_transform(self.exponent, d, r)


def _log_abs_power_transform(alpha: float, d: int, r):
    """``log`` of ``|2^{a+d} pi^{d/2} Gamma((a+d)/2) / Gamma(-a/2)| r^{-a-d}``."""
    const = (
        (alpha + d) * math.log(2.0)
        + 0.5 * d * math.log(math.pi)
        + math.lgamma(0.5 * (alpha + d))
        - math.lgamma(-0.5 * alpha)
    )
    return const - (alpha + d) * np.log(r)


def _check_dim(d: int) -> None:
    if not (isinstance(d, (int, np.integer)) and 1 <= d <= MAX_DIM):
        raise UnsupportedError(f"dimension must be an integer in [1, {MAX_DIM}], got {d}")


def _check_radius(r) -> None:
    if np.any(r == 0):
        raise PoleError("generalized transform has a pole at the origin")
    if np.any(~(r > 0)):
        raise DomainError("transform radius must be positive")


def eval_kernel(k: RadialKernel, r):
    """Evaluate ``phi(r)`` for ``r >= 0`` (array friendly)."""
    r = np.asarray(r, dtype=float)
    if np.any(~(r >= 0)):
        raise DomainError("kernel radius must be nonnegative")
    if k.kind == "gaussian":
        out = np.exp(-k.lam * r * r)
    elif k.kind == "multiquadric":
        out = np.hypot(r, k.c)
    elif k.kind == "inverse_multiquadric":
        if k.c == 0 and np.any(r == 0):
            raise DomainError("inverse multiquadric with c = 0 is singular at r = 0")
        out = 1.0 / np.hypot(r, k.c)
    elif k.kind == "distance":
        out = r.copy()
    else:
        out = r ** k.alpha
    return out[()] if out.ndim == 0 else out


def mq_transform(c: float, d: int, r):
    """Generalized transform of the multiquadric ``sqrt(r^2 + c^2)``.

    ``-pi^{-1} (2 pi c / r)^{(d+1)/2} K_{(d+1)/2}(c r)``, negative for all ``r > 0``.

    Raises
    ------
    PoleError
        At ``r = 0``.
    """
    if not c > 0:
        raise DomainError("mq_transform requires c > 0")
    _check_dim(d)
    r = np.asarray(r, dtype=float)
    _check_radius(r)
    nu = 0.5 * (d + 1)
    out = -(2.0 * math.pi * c / r) ** nu * bessel_k(nu, c * r) / math.pi
    return out[()] if np.ndim(out) == 0 else out


def gaussian_transform(lam: float, d: int, r):
    """``(pi/lam)^{d/2} exp(-r^2 / 4 lam)``."""
    if not lam > 0:
        raise DomainError("gaussian_transform requires lambda > 0")
    r = np.asarray(r, dtype=float)
    out = (math.pi / lam) ** (0.5 * d) * np.exp(-r * r / (4.0 * lam))
    return out[()] if np.ndim(out) == 0 else out


def theta3(z, q: float):
    """Jacobi theta function ``1 + 2 sum_k q^{k^2} cos(2 k z)`` by its product form.

    ``prod_k (1 - q^{2k}) (1 + 2 q^{2k-1} cos 2z + q^{4k-2})``, truncated once
    ``q^{2k-1} < 1e-17``.
    """
    if not 0 <= q < 1:
        raise DomainError("theta3 requires 0 <= q < 1")
    z = np.asarray(z, dtype=float)
    out = np.ones_like(z)
    if q > 0:
        cos2z = np.cos(2.0 * z)
        k = 1
        while True:
            qodd = q ** (2 * k - 1)
            if qodd < 1e-17:
                break
            out = out * (1.0 - q ** (2 * k)) * (1.0 + 2.0 * qodd * cos2z + qodd * qodd)
            k += 1
    return out[()] if out.ndim == 0 else out
