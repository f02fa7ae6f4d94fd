"""Cardinal functions: multiquadric interpolation tends to sinc interpolation.

The cardinal function ``chi`` interpolates the delta sequence on the
integers. Its Fourier transform approaches the indicator of ``[-pi, pi]`` as
the multiquadric shape grows, so the cardinal series approaches the
Whittaker sinc series. For the Gaussian the coefficients of ``chi`` in
integer shifts alternate in sign and sum in modulus to ``1 / sigma(pi)``.
"""
import numpy as np

from gridrbf import RadialKernel
from gridrbf.cardinal import (
    CardinalTransform,
    gaussian_cardinal_coeffs,
    indicator_gap,
    norm_equality_check,
    sc_interpolate,
)

print("c     |chi^ - 1| at 0.5   chi^ at 4.0")
for c in (1.0, 2.0, 4.0, 8.0, 16.0):
    t = CardinalTransform(RadialKernel.multiquadric(c))
    print(f"{c:<5g} {indicator_gap(t, 0.5):.3e}           {indicator_gap(t, 4.0):.3e}")

k = np.arange(-200, 201)
x = np.linspace(-5, 5, 101)
print("\nc     max error, sinc     max error, cos(x/2)")
for c in (1.0, 2.0, 4.0, 8.0):
    e1 = np.abs(sc_interpolate(c, np.sinc(k), x) - np.sinc(x)).max()
    e2 = np.abs(sc_interpolate(c, np.cos(k / 2), x) - np.cos(x / 2)).max()
    print(f"{c:<5g} {e1:.3e}           {e2:.3e}")
# sinc decays slowly, so its truncated series converges more slowly than
# the cosine's, but both errors fall steadily with c.

coeffs = gaussian_cardinal_coeffs(1.0, 64)
print("\nGaussian cardinal coefficients c_0..c_4:", " ".join(f"{coeffs[j]:.5g}" for j in range(5)))
print(f"c_64 = {coeffs[64]:.4e}, ratio c_64 / c_63 = {coeffs[64] / coeffs[63]:.6f} (exp(-1) = {np.exp(-1):.6f})")
total, inv, gap = norm_equality_check(1.0, 64)
print(f"sum |c_k| = {total:.15f}, 1/sigma(pi) = {inv:.15f}, relative gap {gap:.1e}")
