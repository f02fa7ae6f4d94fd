"""Singular p-norm distance matrices for p > 2.

For ``1 < p <= 2`` every p-norm distance matrix of distinct points is
invertible. For ``p > 2`` that fails: the vertices of two orthogonal cubes on
the p-norm unit sphere give a singular matrix at a critical exponent that
is the root of a Bernstein-polynomial expression.
"""
from gridrbf import build_gamma, find_pmn, find_pn, find_theta_star, verify_singular

print("n    p_n          n (p_n - 2)")
for n in (2, 3, 4, 8, 16, 64, 256):
    p = find_pn(n).p_n
    print(f"{n:<4d} {p:.9f}  {n * (p - 2):.4f}")
# p_n decreases to 2 like 1/n: in high dimension exponents only slightly
# above 2 already allow singular configurations.

for m, n in ((2, 2), (2, 3), (3, 3)):
    p = find_pmn(m, n)
    rep = verify_singular(build_gamma(m, n, p))
    print(f"cubes {m},{n}: p = {p:.9f}, smallest singular value / norm = {rep.relative:.2e}")

# Any p above p_n works once the second cube is shrunk by theta*.
t = find_theta_star(3, 4.0)
rep = verify_singular(build_gamma(3, 3, 4.0, t))
print(f"p = 4, theta* = {t:.9f}: relative smallest singular value {rep.relative:.2e}")
