"""Conjugate gradient solvers and banded preconditioners for grid interpolation.

Two problems are covered:

* Gaussian interpolation on ``[-N, N]``: the Toeplitz matrix is positive
  definite and plain preconditioned CG applies.
* Multiquadric interpolation with a constant term: ``A x + e y = b`` with
  ``e^T x = 0``. ``A`` is negative definite on zero-sum vectors and the
  solver works in that subspace, with a preconditioner whose kernel is ``e``.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .basis import RadialKernel
from .errors import BreakdownError, DomainError, IndefinitePreconditionerError
from .matrices import assemble, lu_solve
from .toeplitz import banded_matvec

__all__ = [
    "SolveReport",
    "BandedPreconditioner",
    "cg",
    "constrained_pcg",
    "build_gaussian_precond",
    "build_mq_precond",
    "band_symbol",
    "lcg_uniform",
    "squares_rhs",
    "as_linear_map",
]

_CERT_POINTS = 10_000


def as_linear_map(A) -> Callable[[np.ndarray], np.ndarray]:
    """Turn a matrix, an operator with ``matvec`` or a callable into ``x -> A x``."""
    if A is None:
        return lambda x: x.copy()
    if isinstance(A, np.ndarray):
        return lambda x: A @ x
    if hasattr(A, "matvec"):
        return A.matvec
    if hasattr(A, "apply"):
        return A.apply
    if callable(A):
        return A
    raise DomainError("cannot interpret operator")


def lcg_uniform(n: int, seed: int = 1) -> np.ndarray:
    """``n`` numbers in ``[-1, 1)`` from a 64-bit linear congruential generator.

    Uses the MMIX multiplier and increment and keeps the top 53 bits of each
    state, so the stream is fully determined by ``seed`` on every platform.
    """
    a = 6364136223846793005
    c = 1442695040888963407
    mask = (1 << 64) - 1
    state = seed & mask
    out = np.empty(n)
    for i in range(n):
        state = (a * state + c) & mask
        out[i] = (state >> 11) * 2.0 ** -53
    return 2.0 * out - 1.0


def squares_rhs(order: int) -> np.ndarray:
    """Right-hand side ``b = [1, 4, 9, ...]`` of the constrained instability example."""
    k = np.arange(1, order + 1, dtype=float)
    return k * k


@dataclass
class SolveReport:
    """History and result of a Krylov solve.

    ``residual_history[k]`` and ``direction_history[k]`` are ``||rho_k||``
    and ``||delta_k||``; ``constraint_history[k]`` is ``|e^T rho_k|``.
    """

    iterations: int
    residual_history: list[float]
    direction_history: list[float]
    converged: bool
    solution: np.ndarray
    rhs_norm: float
    constraint_history: list[float] = field(default_factory=list)
    multiplier: float | None = None
    seed: int | None = None

    def to_csv(self, column: str = "residual") -> str:
        """CSV with columns ``iteration`` and the chosen history."""
        hist = {
            "residual": self.residual_history,
            "direction": self.direction_history,
            "constraint": self.constraint_history,
        }[column]
        buf = io.StringIO()
        if self.seed is not None:
            buf.write(f"# seed={self.seed}\n")
        buf.write(f"iteration,{column}\n")
        for k, v in enumerate(hist):
            buf.write(f"{k},{v:.6e}\n")
        return buf.getvalue()


@dataclass(frozen=True)
class BandedPreconditioner:
    """Banded symmetric Toeplitz preconditioner, optionally with ``e`` in its kernel.

    With ``rank_one_correction`` the map is ``C = D - (De)(De)^T / (e^T D e)``,
    which annihilates the constant vector.
    """

    coeffs: np.ndarray
    rank_one_correction: bool = False
    source: str = "custom"

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size % 2 == 0:
            raise DomainError("coeffs must have odd length 2m + 1")
        if np.abs(c - c[::-1]).max() > 1e-10 * np.abs(c).max():
            raise DomainError("coeffs must be even in the index")
        c = 0.5 * (c + c[::-1])
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def m(self) -> int:
        return self.coeffs.size // 2

    def apply(self, x: np.ndarray) -> np.ndarray:
        y = banded_matvec(self.coeffs, x)
        if not self.rank_one_correction:
            return y
        De = banded_matvec(self.coeffs, np.ones_like(x))
        eDe = De.sum()
        if not eDe > 0:
            raise IndefinitePreconditionerError("e^T D e must be positive for the rank-one correction")
        return y - De * (De @ x) / eDe

    __call__ = apply

    def symbol(self, xi):
        return band_symbol(self.coeffs, xi)


def band_symbol(coeffs, xi):
    """Trigonometric polynomial ``d_0 + 2 sum_{j>=1} d_j cos(j xi)``."""
    coeffs = np.asarray(coeffs, dtype=float)
    m = coeffs.size // 2
    xi = np.asarray(xi, dtype=float)
    out = np.full(xi.shape, coeffs[m])
    for j in range(1, m + 1):
        out = out + 2.0 * coeffs[m + j] * np.cos(j * xi)
    return out[()] if out.ndim == 0 else out


def _zero_sum_band_symbol(coeffs, xi):
    """``-4 sum_{j>=1} d_j sin^2(j xi / 2)``: the band symbol when ``sum d_j = 0``, without cancellation."""
    m = coeffs.size // 2
    out = np.zeros_like(xi)
    for j in range(1, m + 1):
        out = out - 4.0 * coeffs[m + j] * np.sin(0.5 * j * xi) ** 2
    return out


def _finite_section_column(kernel: RadialKernel, n: int) -> np.ndarray:
    """Central column of ``A_n^{-1}`` for ``A_n = (phi(j - k))_{j,k=-n}^n``."""
    A = assemble(np.arange(-n, n + 1), kernel)
    e0 = np.zeros(2 * n + 1)
    e0[n] = 1.0
    return lu_solve(A, e0)


def build_gaussian_precond(n: int, m: int, lam: float = 1.0) -> BandedPreconditioner:
    """Band of the finite-section inverse ``c_j = (A_n^{-1})_{j0}``, ``|j| <= m``.

    Raises
    ------
    IndefinitePreconditionerError
        If the band symbol is not positive on a dense sample of ``[0, 2 pi]``.
    """
    if not 0 <= m <= n:
        raise DomainError("need 0 <= m <= n")
    col = _finite_section_column(RadialKernel.gaussian(lam), n)
    coeffs = col[n - m : n + m + 1]
    xi = np.linspace(0.0, 2.0 * math.pi, _CERT_POINTS)
    if np.min(band_symbol(coeffs, xi)) <= 0:
        raise IndefinitePreconditionerError("Gaussian band symbol is not positive")
    return BandedPreconditioner(coeffs, False, "gaussian-section")


def build_mq_precond(n: int, m: int, c: float = 1.0) -> BandedPreconditioner:
    """Zero-sum band from the multiquadric finite-section inverse.

    ``c_j = -(A_n^{-1})_{j0}`` for ``|j| <= m``, shifted by their mean so
    that ``sum d_j = 0``, with the rank-one correction enabled. The global
    sign is chosen so that ``sigma_D(xi) / sin^2(xi/2) > 0`` on ``(0, 2 pi)``.

    Raises
    ------
    IndefinitePreconditionerError
        If that ratio changes sign on the sample.
    """
    if not 1 <= m <= n:
        raise DomainError("need 1 <= m <= n")
    if not c > 0:
        raise DomainError("shape parameter must be positive")
    col = -_finite_section_column(RadialKernel.multiquadric(c), n)
    raw = col[n - m : n + m + 1]
    coeffs = raw - raw.mean()
    xi = np.linspace(0.0, 2.0 * math.pi, _CERT_POINTS + 2)[1:-1]
    ratio = _zero_sum_band_symbol(coeffs, xi) / np.sin(0.5 * xi) ** 2
    if np.all(ratio < 0):
        coeffs = -coeffs
    elif not np.all(ratio > 0):
        raise IndefinitePreconditionerError("corrected band symbol changes sign")
    return BandedPreconditioner(coeffs, True, "multiquadric-section")


def _check_finite(value: float, k: int, what: str) -> None:
    if not math.isfinite(value) or value == 0.0:
        raise BreakdownError(f"{what} is {value} at iteration {k}", iteration=k)


def cg(A, b, C=None, tol: float = 1e-13, maxit: int = 1000, seed: int | None = None) -> SolveReport:
    """Preconditioned conjugate gradients from ``x_0 = 0``.

    Iterates ``a_k = rho^T C rho / delta^T A delta``, ``rho_{k+1} = rho_k - a_k A delta_k``,
    ``delta_{k+1} = C rho_{k+1} + b_k delta_k`` and stops once
    ``||rho_{k+1}|| <= tol ||b||``.

    Parameters
    ----------
    A, C : ndarray, operator with ``matvec``/``apply``, or callable
        ``C = None`` means no preconditioning.
    b : ndarray
    tol : float
    maxit : int
    seed : int, optional
        Recorded in the report when ``b`` came from :func:`lcg_uniform`.
    """
    return _pcg(A, b, C, tol, maxit, project=False, seed=seed)


def constrained_pcg(
    A, b, C, tol: float = 1e-13, maxit: int = 1000, variant: str = "b", seed: int | None = None
) -> SolveReport:
    """Solve ``A x + e y = b``, ``e^T x = 0`` with a preconditioner satisfying ``C e = 0``.

    Variant ``"b"`` projects every residual onto ``e^perp``; variant ``"a"``
    runs the same recurrence without projection and is unstable in floating
    point. The multiplier is recovered as ``y = e^T (b - A x) / N``.
    """
    if variant not in ("a", "b"):
        raise DomainError("variant must be 'a' or 'b'")
    report = _pcg(A, b, C, tol, maxit, project=variant == "b", seed=seed, constrained=True)
    apply_A = as_linear_map(A)
    x = report.solution
    if variant == "b":
        x = x - x.mean()
        report.solution = x
    report.multiplier = float(np.sum(b - apply_A(x)) / b.size)
    return report


def _pcg(A, b, C, tol, maxit, project, seed=None, constrained=False) -> SolveReport:
    apply_A = as_linear_map(A)
    apply_C = as_linear_map(C)
    b = np.asarray(b, dtype=float)
    bnorm = float(np.linalg.norm(b))
    Q = (lambda v: v - v.mean()) if project else (lambda v: v)
    x = np.zeros_like(b)
    rho = Q(b.copy())
    z = apply_C(rho)
    delta = z.copy()
    rz = float(rho @ z)
    res = [float(np.linalg.norm(rho))]
    dirs = [float(np.linalg.norm(delta))]
    cons = [abs(float(rho.sum()))] if constrained else []
    converged = res[0] <= tol * bnorm
    k = 0
    while not converged and k < maxit:
        Ad = apply_A(delta)
        dAd = float(delta @ Ad)
        _check_finite(dAd, k, "delta^T A delta")
        _check_finite(rz, k, "rho^T C rho")
        a = rz / dAd
        x = x + a * delta
        rho = Q(rho - a * Ad)
        k += 1
        res.append(float(np.linalg.norm(rho)))
        if constrained:
            cons.append(abs(float(rho.sum())))
        if res[-1] <= tol * bnorm:
            converged = True
            dirs.append(float("nan"))
            break
        z = apply_C(rho)
        rz_new = float(rho @ z)
        delta = z + (rz_new / rz) * delta
        rz = rz_new
        dirs.append(float(np.linalg.norm(delta)))
    return SolveReport(
        iterations=k,
        residual_history=res,
        direction_history=dirs,
        converged=converged,
        solution=x,
        rhs_norm=bnorm,
        constraint_history=cons,
        seed=seed,
    )
