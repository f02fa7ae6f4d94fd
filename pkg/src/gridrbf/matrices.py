"""Dense distance matrices and the linear algebra used to study them."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg
from scipy.spatial.distance import cdist

from .basis import RadialKernel
from .errors import DomainError, NotAlmostNegativeDefinite, SingularMatrixError, SizeError

__all__ = [
    "assemble",
    "ANDResult",
    "zero_sum_basis",
    "check_almost_negative_definite",
    "schoenberg_embedding",
    "symmetric_eigenvalues",
    "smallest_eig_modulus",
    "euclid_integer_inverse",
    "lu_solve",
    "MAX_DENSE_ORDER",
]

MAX_DENSE_ORDER = 2000
AND_RTOL = 1e-10


def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise DomainError("points must be a non-empty (n, d) array")
    return pts


def assemble(points, kernel: RadialKernel, p: float = 2.0) -> np.ndarray:
    """Interpolation matrix ``A_ij = phi(||x_i - x_j||_p)``.

    Parameters
    ----------
    points : array_like, shape (n,) or (n, d)
    kernel : RadialKernel
    p : float
        Norm exponent in ``[1, inf]``; 2 is Euclidean.
    """
    pts = _as_points(points)
    if not p >= 1:
        raise DomainError("norm exponent must satisfy p >= 1")
    if p == 2:
        dist = cdist(pts, pts, "euclidean")
    elif np.isinf(p):
        dist = cdist(pts, pts, "chebyshev")
    else:
        dist = cdist(pts, pts, "minkowski", p=p)
    A = kernel(dist)
    return 0.5 * (A + A.T)


def _check_symmetric(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    scale = max(np.abs(A).max(), np.finfo(float).tiny)
    if np.abs(A - A.T).max() > 1e-14 * scale * max(1, A.shape[0]):
        raise DomainError("matrix must be symmetric")
    return A


def zero_sum_basis(n: int) -> np.ndarray:
    """Orthonormal basis (as columns) of the zero-sum hyperplane in ``R^n``.

    Built from the Householder reflector that maps ``e`` to a multiple of ``e_1``.
    """
    v = np.ones(n)
    v[0] += np.sqrt(n)
    H = np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)
    return H[:, 1:]


@dataclass
class ANDResult:
    """Outcome of :func:`check_almost_negative_definite`.

    Attributes
    ----------
    verdict : str
        ``"strictly-AND"``, ``"AND"`` or ``"not-AND"``.
    eigenvalues : ndarray
        Spectrum of the form restricted to the zero-sum hyperplane.
    tol : float
        Threshold below which an eigenvalue counts as zero.
    witness : ndarray or None
        Zero-sum vector with ``w^T A w > tol`` when the verdict is ``not-AND``.
    """

    verdict: str
    eigenvalues: np.ndarray
    tol: float
    witness: np.ndarray | None = field(default=None)

    @property
    def is_and(self) -> bool:
        return self.verdict != "not-AND"

    @property
    def is_strict(self) -> bool:
        return self.verdict == "strictly-AND"


def check_almost_negative_definite(A) -> ANDResult:
    """Classify the quadratic form of ``A`` on zero-sum vectors.

    An eigenvalue is treated as zero when its modulus is at most
    ``1e-10 * ||A||_2``.
    """
    A = _check_symmetric(A)
    n = A.shape[0]
    norm = np.linalg.norm(A, 2) if n else 0.0
    tol = AND_RTOL * norm
    if n < 2:
        return ANDResult("AND", np.zeros(0), tol)
    Z = zero_sum_basis(n)
    w, V = np.linalg.eigh(Z.T @ A @ Z)
    if w[-1] > tol:
        witness = Z @ V[:, -1]
        return ANDResult("not-AND", w, tol, witness)
    verdict = "strictly-AND" if w[-1] < -tol else "AND"
    return ANDResult(verdict, w, tol)


def schoenberg_embedding(A) -> np.ndarray:
    """Points ``y_i`` with ``|y_i - y_j|^2 = A_ij`` for an AND matrix with zero diagonal.

    Returns an ``(n, n-1)`` array; the last point is the origin.

    Raises
    ------
    DomainError
        If the diagonal is not zero.
    NotAlmostNegativeDefinite
        If ``A`` is not AND; the exception carries a witness vector.
    """
    A = _check_symmetric(A)
    n = A.shape[0]
    scale = max(np.abs(A).max(), 1.0)
    if np.abs(np.diag(A)).max() > 1e-14 * scale:
        raise DomainError("embedding requires a zero diagonal")
    res = check_almost_negative_definite(A)
    if not res.is_and:
        raise NotAlmostNegativeDefinite(
            "matrix is not almost negative definite",
            witness=res.witness,
            eigenvalue=float(res.eigenvalues[-1]),
        )
    if n == 1:
        return np.zeros((1, 0))
    # columns f_i = e_n - e_i (i < n), f_n = e_n
    F = np.zeros((n, n))
    F[-1, :] = 1.0
    F[np.arange(n - 1), np.arange(n - 1)] = -1.0
    B = -F.T @ A @ F
    G = 0.5 * (B[:-1, :-1] + B[:-1, :-1].T)
    w, V = np.linalg.eigh(G)
    clip = AND_RTOL * max(np.abs(w).max(), np.finfo(float).tiny)
    if w[0] < -clip:
        raise NotAlmostNegativeDefinite(
            "embedding Gram matrix is indefinite", witness=None, eigenvalue=float(w[0])
        )
    w = np.clip(w, 0.0, None)
    P = np.sqrt(w)[:, None] * V.T  # G = P^T P, columns p_i
    Y = np.zeros((n, n - 1))
    Y[:-1] = P.T / np.sqrt(2.0)
    return Y


def symmetric_eigenvalues(A) -> np.ndarray:
    """All eigenvalues of a dense symmetric matrix, ascending.

    Uses LAPACK's tridiagonal reduction followed by implicit QL/QR.
    """
    A = _check_symmetric(A)
    if A.shape[0] > MAX_DENSE_ORDER:
        raise SizeError(f"dense eigensolve is capped at order {MAX_DENSE_ORDER}")
    return linalg.eigvalsh(A, driver="ev")


def smallest_eig_modulus(A) -> float:
    """``min |lambda_i|`` over the spectrum of a symmetric matrix."""
    return float(np.abs(symmetric_eigenvalues(A)).min())


def euclid_integer_inverse(n: int) -> np.ndarray:
    """Closed-form inverse of ``A_n = (|j - k|)_{j,k=0}^n``.

    The interior rows are the second difference ``(1/2, -1, 1/2)``; the
    first and last rows are ``((1-n)/2n, 1/2, 0, ..., 0, 1/2n)`` and its
    reversal.
    """
    if n < 2:
        raise DomainError("n must be at least 2")
    size = n + 1
    inv = np.zeros((size, size))
    i = np.arange(1, n)
    inv[i, i] = -1.0
    inv[i, i - 1] = 0.5
    inv[i, i + 1] = 0.5
    inv[0, 0] = inv[n, n] = (1.0 - n) / (2.0 * n)
    inv[0, 1] = inv[n, n - 1] = 0.5
    inv[0, n] = inv[n, 0] = 1.0 / (2.0 * n)
    return inv


def lu_solve(A, b, return_growth: bool = False):
    """Solve ``A x = b`` by LU factorization with partial pivoting.

    Parameters
    ----------
    A : array_like, shape (n, n)
    b : array_like, shape (n,) or (n, k)
    return_growth : bool
        Also return the pivot growth ``max|U| / max|A|``.

    Raises
    ------
    SingularMatrixError
        If a pivot is below ``1e-300`` in modulus.
    """
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError("matrix must be square")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(A, check_finite=True)
    if np.abs(np.diag(lu)).min() < 1e-300:
        raise SingularMatrixError("zero pivot in LU factorization")
    x = linalg.lu_solve((lu, piv), np.asarray(b, dtype=float))
    if return_growth:
        growth = np.abs(np.triu(lu)).max() / max(np.abs(A).max(), np.finfo(float).tiny)
        return x, float(growth)
    return x
