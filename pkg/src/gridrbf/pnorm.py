"""Singular p-norm distance matrices for p > 2.

Two orthogonal cubes on the p-norm unit sphere are built: ``Gamma_m`` with
vertices ``+-m^{-1/p}`` in the first ``m`` coordinates and ``Gamma_n(theta)``
with vertices ``+-theta n^{-1/p}`` in the last ``n``. Their distance matrix
reduces to a 2x2 system whose determinant is a product of Bernstein
polynomial values of ``t -> t^{1/p}`` at ``1/2``. Its roots give the exponents
where the full matrix is singular.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, stats

from .basis import RadialKernel
from .errors import BracketError, DomainError, PreconditionError, SizeError
from .matrices import assemble

__all__ = [
    "bernstein_half",
    "psi",
    "phi",
    "phi_theta",
    "CriticalExponent",
    "find_pn",
    "find_pmn",
    "find_theta_star",
    "GammaConfig",
    "build_gamma",
    "verify_singular",
    "SingularReport",
]

_ROOT_TOL = 1e-12
MAX_GAMMA_ORDER = 4200


def bernstein_half(n: int, p: float) -> float:
    """``B_n(f_p, 1/2) = 2^{-n} sum_j C(n, j) (j/n)^{1/p}``.

    The binomial weights come from the binomial probability mass function,
    which stays finite for any ``n``.
    """
    if n < 1:
        raise DomainError("degree must be at least 1")
    if not p >= 1:
        raise DomainError("exponent must satisfy p >= 1")
    j = np.arange(n + 1)
    w = stats.binom.pmf(j, n, 0.5)
    return float(np.sum(w * (j / n) ** (1.0 / p)))


def psi(n: int, p: float) -> float:
    """``2 B_n - 2^{1/p}``; its unique root in ``(2, inf)`` is ``p_n``."""
    return 2.0 * bernstein_half(n, p) - 2.0 ** (1.0 / p)


def phi(m: int, n: int, p: float) -> float:
    """Scaled determinant ``4 B_m B_n - 2^{2/p}`` of the reduced 2x2 system."""
    return 4.0 * bernstein_half(m, p) * bernstein_half(n, p) - 2.0 ** (2.0 / p)


def phi_theta(n: int, p: float, theta: float) -> float:
    """``4 theta B_n^2 - (1 + theta^p)^{2/p}`` for cubes of equal dimension scaled by ``theta``."""
    if not theta > 0:
        raise DomainError("theta must be positive")
    return 4.0 * theta * bernstein_half(n, p) ** 2 - (1.0 + theta ** p) ** (2.0 / p)


@dataclass(frozen=True)
class CriticalExponent:
    """Root ``p_n`` of ``psi_n`` with the bracket used to find it."""

    n: int
    p_n: float
    bracket: tuple[float, float]
    residual: float


def _bisect(f, lo: float, hi: float) -> float:
    return optimize.bisect(f, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=400)


def find_pn(n: int) -> CriticalExponent:
    """Critical exponent ``p_n > 2`` where ``psi_n`` changes sign."""
    if n < 2:
        raise DomainError("n must be at least 2")
    lo = 2.0 + 1e-9
    hi = 4.0
    while psi(n, hi) <= 0:
        hi *= 2.0
        if hi > 2.0 ** 10:
            raise BracketError(f"no sign change of psi_{n} below 2^10")
    if psi(n, lo) >= 0:
        raise BracketError(f"psi_{n} is not negative just above 2")
    root = _bisect(lambda p: psi(n, p), lo, hi)
    res = abs(psi(n, root))
    if res > _ROOT_TOL:
        raise BracketError(f"root residual {res:.3e} exceeds tolerance")
    return CriticalExponent(n, root, (lo, hi), res)


def find_pmn(m: int, n: int) -> float:
    """Root ``p_{m,n}`` of ``phi_{m,n}``; lies strictly between ``p_n`` and ``p_m`` for ``m < n``."""
    m, n = sorted((m, n))
    if m < 2:
        raise DomainError("cube dimensions must be at least 2")
    if m == n:
        return find_pn(n).p_n
    pm = find_pn(m).p_n
    pn = find_pn(n).p_n
    f = lambda p: phi(m, n, p)  # noqa: E731
    if not (f(pn) < 0 < f(pm)):
        raise BracketError("phi_{m,n} has no sign change on (p_n, p_m)")
    root = _bisect(f, pn, pm)
    if abs(f(root)) > _ROOT_TOL or not pn < root < pm:
        raise BracketError("p_{m,n} failed its consistency checks")
    return root


def find_theta_star(n: int, p: float) -> float:
    """Scale ``theta*`` in ``(0, 1)`` with ``phi_{n,n,theta*}(p) = 0``.

    Raises
    ------
    PreconditionError
        If ``p <= p_n``, where no such scale is guaranteed.
    """
    pn = find_pn(n).p_n
    if not p > pn:
        raise PreconditionError(f"need p > p_{n} = {pn:.12g}")
    f = lambda t: phi_theta(n, p, t)  # noqa: E731
    if f(1.0) <= 0:
        raise PreconditionError("phi_{n,n,1}(p) must be positive")
    lo = 0.5
    while f(lo) >= 0:
        lo *= 0.5
        if lo < 1e-300:
            raise BracketError("could not find a negative value of phi_theta")
    root = _bisect(f, lo, 1.0)
    if abs(f(root)) > _ROOT_TOL:
        raise BracketError("theta* residual exceeds tolerance")
    return root


def _cube(k: int, offset: int, dim: int, scale: float) -> np.ndarray:
    signs = np.array(list(itertools.product((-1.0, 1.0), repeat=k)))
    pts = np.zeros((signs.shape[0], dim))
    pts[:, offset : offset + k] = scale * signs
    return pts


@dataclass(frozen=True)
class GammaConfig:
    """Vertices of ``Gamma_m`` followed by those of ``Gamma_n(theta)`` in ``R^{m+n}``."""

    m: int
    n: int
    p: float
    theta: float
    points: np.ndarray

    @property
    def order(self) -> int:
        return self.points.shape[0]

    @property
    def split(self) -> int:
        """Number of points belonging to ``Gamma_m``."""
        return 2 ** self.m


def build_gamma(m: int, n: int, p: float, theta: float = 1.0) -> GammaConfig:
    if m < 1 or n < 1:
        raise DomainError("cube dimensions must be positive")
    if not p >= 1:
        raise DomainError("exponent must satisfy p >= 1")
    if not theta > 0:
        raise DomainError("theta must be positive")
    dim = m + n
    a = _cube(m, 0, dim, m ** (-1.0 / p))
    b = _cube(n, m, dim, theta * n ** (-1.0 / p))
    pts = np.vstack([a, b])
    pts.setflags(write=False)
    return GammaConfig(m, n, float(p), float(theta), pts)


@dataclass(frozen=True)
class SingularReport:
    """Smallest singular value of the configuration's distance matrix."""

    smallest: float
    vector: np.ndarray
    norm: float

    @property
    def relative(self) -> float:
        return self.smallest / self.norm


def verify_singular(cfg: GammaConfig) -> SingularReport:
    """Assemble the p-norm distance matrix and find its eigenvalue of least modulus.

    For a symmetric matrix this modulus is the smallest singular value.
    """
    if cfg.order > MAX_GAMMA_ORDER:
        raise SizeError(f"order {cfg.order} exceeds the dense cap {MAX_GAMMA_ORDER}")
    A = assemble(cfg.points, RadialKernel.distance(), p=cfg.p)
    w, V = np.linalg.eigh(A)
    i = int(np.argmin(np.abs(w)))
    return SingularReport(float(abs(w[i])), V[:, i], float(np.abs(w).max()))
