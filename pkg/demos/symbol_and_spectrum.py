"""Eigenvalues of multiquadric grid matrices and the symbol that bounds them.

The multiquadric ``sqrt(r^2 + c^2)`` gives distance matrices on the integers
whose eigenvalues never come closer to zero than ``|sigma(pi)|``, where
``sigma`` is the periodized Fourier transform of the kernel. This script
prints that bound for several shape parameters, then watches the smallest
eigenvalue of finite sections approach it.
"""
import numpy as np

from gridrbf import RadialKernel, assemble, optimal_bound, smallest_eig_modulus, szego_estimates

print("shape c   optimal bound |sigma(pi)|")
for c in (1.0, 2.0, 5.0, 10.0):
    print(f"{c:7.1f}   {optimal_bound(RadialKernel.multiquadric(c)):.6e}")

# The bound decays like exp(-c pi): large shapes give catastrophically
# conditioned systems, whatever the number of centres.

kern = RadialKernel.multiquadric(1.0)
mu = optimal_bound(kern)
print("\norder   smallest |eigenvalue|   symbol estimate   excess over bound")
for n in (25, 50, 100, 200, 350):
    lam = smallest_eig_modulus(assemble(np.arange(n), kern))
    est = abs(szego_estimates(kern, n)[0])
    print(f"{n:5d}   {lam:.7e}          {est:.7e}     {lam / mu - 1:.2e}")

# The estimates sigma(pi + k pi / n) track the eigenvalues nearest zero
# closely; further into the spectrum they are only qualitative.
n = 200
eig = np.sort(np.linalg.eigvalsh(assemble(np.arange(n), kern)))
neg = eig[eig < 0][::-1]
est = szego_estimates(kern, n)
for k in range(4):
    print(f"order {n}, eigenvalue {k}: {neg[k]:.7e}  estimate {est[k]:.7e}")
