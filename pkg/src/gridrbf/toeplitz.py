"""Symmetric (multi-level) Toeplitz operators with FFT matrix-vector products."""
from __future__ import annotations

import math

import numpy as np

from .basis import RadialKernel
from .errors import DomainError, UnsupportedError

__all__ = ["fft", "ToeplitzOperator", "banded_matvec", "embedding_length"]


def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def fft(x, inverse: bool = False, axis: int = -1) -> np.ndarray:
    """Radix-2 discrete Fourier transform along one axis.

    The forward transform is ``X_k = sum_j x_j exp(-2 pi i j k / n)``; the
    inverse uses the opposite sign and divides by ``n``.

    Parameters
    ----------
    x : array_like
        Input; the transform length must be a power of two.
    inverse : bool
    axis : int

    Raises
    ------
    DomainError
        If the length along ``axis`` is not a power of two.
    """
    a = np.moveaxis(np.asarray(x, dtype=complex), axis, -1)
    n = a.shape[-1]
    if n < 1 or n & (n - 1):
        raise DomainError(f"fft length must be a power of two, got {n}")
    out = a[..., _bit_reverse(n)]
    sign = 1.0 if inverse else -1.0
    lead = out.shape[:-1]
    size = 2
    while size <= n:
        half = size // 2
        tw = np.exp(sign * 2j * math.pi * np.arange(half) / size)
        blocks = out.reshape(*lead, n // size, size)
        even = blocks[..., :half]
        odd = blocks[..., half:] * tw
        out = np.concatenate((even + odd, even - odd), axis=-1).reshape(*lead, n)
        size *= 2
    if inverse:
        out = out / n
    return np.moveaxis(out, -1, axis)


def embedding_length(n: int) -> int:
    """Smallest power of two that is at least ``4n + 2``."""
    return 1 << (4 * n + 1).bit_length()


class ToeplitzOperator:
    """Distance matrix ``(phi(||j - k||))`` on the grid ``[-n, n]^d``.

    Products are computed by embedding each level in a circulant of
    power-of-two length and multiplying in the Fourier domain. The
    circulant spectrum is computed once at construction.

    Parameters
    ----------
    gen : ndarray
        Generator values ``phi(||j||)`` for ``j in [-2n, 2n]^d``, shape
        ``(4n+1,) * d``, index ``j + 2n``.
    n : int
        Grid half-width.
    d : int
        Number of levels (1 or 2).
    """

    def __init__(self, gen, n: int, d: int = 1):
        if d not in (1, 2):
            raise UnsupportedError("Toeplitz operators are implemented for d = 1 and d = 2")
        if n < 0:
            raise DomainError("n must be nonnegative")
        gen = np.asarray(gen, dtype=float)
        if gen.shape != (4 * n + 1,) * d:
            raise DomainError(f"generator must have shape {(4 * n + 1,) * d}")
        if not np.allclose(gen, gen[(slice(None, None, -1),) * d], rtol=1e-14, atol=0):
            raise DomainError("generator must be even")
        self.n = n
        self.d = d
        self.gen = gen
        self.size = 2 * n + 1
        self.order = self.size ** d
        self.length = embedding_length(n)
        L = self.length
        circ = np.zeros((L,) * d)
        # wrap index j in [-2n, 2n] to j mod L on every level
        idx = np.arange(-2 * n, 2 * n + 1) % L
        circ[np.ix_(*([idx] * d))] = gen
        spec = circ.astype(complex)
        for ax in range(d):
            spec = fft(spec, axis=ax)
        self.spectrum = spec.real.copy()
        self.spectrum.setflags(write=False)

    @classmethod
    def from_kernel(cls, kernel: RadialKernel, n: int, d: int = 1) -> "ToeplitzOperator":
        j = np.arange(-2 * n, 2 * n + 1, dtype=float)
        if d == 1:
            r = np.abs(j)
        else:
            r = np.sqrt(sum(g * g for g in np.meshgrid(*([j] * d), indexing="ij")))
        return cls(kernel(r), n, d)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.order, self.order)

    def matvec(self, x) -> np.ndarray:
        """Product ``T x`` for a vector of length ``(2n+1)^d`` (grid in C order)."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.order,):
            raise DomainError(f"expected a vector of length {self.order}")
        L, s, d = self.length, self.size, self.d
        buf = np.zeros((L,) * d, dtype=complex)
        buf[(slice(0, s),) * d] = x.reshape((s,) * d)
        for ax in range(d):
            buf = fft(buf, axis=ax)
        buf *= self.spectrum
        for ax in range(d):
            buf = fft(buf, inverse=True, axis=ax)
        return buf[(slice(0, s),) * d].real.reshape(-1)

    __call__ = matvec

    def __matmul__(self, x):
        return self.matvec(x)

    def dense(self) -> np.ndarray:
        """Explicit matrix, for testing at small orders."""
        s, d, n = self.size, self.d, self.n
        grid = np.array(np.unravel_index(np.arange(self.order), (s,) * d)).T
        diff = grid[:, None, :] - grid[None, :, :] + 2 * n
        return self.gen[tuple(diff[..., k] for k in range(d))]


def banded_matvec(coeffs, x) -> np.ndarray:
    """Multiply by the banded symmetric Toeplitz matrix with diagonals ``d_{-m..m}``.

    Parameters
    ----------
    coeffs : array_like, length ``2m + 1``
        ``coeffs[m + l]`` is the entry on the ``l``-th diagonal.
    x : array_like, length ``N > m``
    """
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.asarray(x, dtype=float)
    if coeffs.ndim != 1 or coeffs.size % 2 == 0:
        raise DomainError("coeffs must have odd length 2m + 1")
    m = coeffs.size // 2
    N = x.shape[0]
    if m >= N:
        raise DomainError("band half-width must be smaller than the vector length")
    y = coeffs[m] * x
    for l in range(1, m + 1):
        y[l:] += coeffs[m + l] * x[:-l]
        y[:-l] += coeffs[m - l] * x[l:]
    return y
