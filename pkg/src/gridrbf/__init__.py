"""Radial basis function interpolation on regular grids.

Symbol-function eigenvalue bounds, FFT-accelerated Toeplitz products,
preconditioned conjugate gradients, p-norm singularity constructions and
multiquadric cardinal functions.
"""
from .basis import RadialKernel, bessel_k, eval_kernel, gaussian_transform, mq_transform, theta3
from .cardinal import (
    CardinalTransform,
    CoeffSequence,
    cardinal_function,
    chi_hat,
    gaussian_cardinal_coeffs,
    indicator_gap,
    multivariate_coeff_product,
    norm_equality_check,
    sc_interpolate,
)
from .krylov import (
    BandedPreconditioner,
    SolveReport,
    band_symbol,
    build_gaussian_precond,
    build_mq_precond,
    cg,
    constrained_pcg,
    lcg_uniform,
)
from .matrices import (
    assemble,
    check_almost_negative_definite,
    euclid_integer_inverse,
    lu_solve,
    schoenberg_embedding,
    smallest_eig_modulus,
)
from .pnorm import (
    bernstein_half,
    build_gamma,
    find_pmn,
    find_pn,
    find_theta_star,
    phi,
    phi_theta,
    psi,
    verify_singular,
)
from .symbol import (
    SymbolEvaluator,
    gaussian_extrema,
    optimal_bound,
    scaled_bound_monotone,
    symbol,
    szego_estimates,
)
from .toeplitz import ToeplitzOperator, banded_matvec, fft

__version__ = "0.1.0"
