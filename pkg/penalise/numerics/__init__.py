"""
Deterministic quadrature, weighted norms and the arcsine kernel.
"""
from penalise.numerics.integrand import Integrand1D
from penalise.numerics.kernels import (
    arcsine_kernel,
    arcsine_kernel_exponential,
    arcsine_kernel_values,
    last_exit_expectation,
    limit_ratio,
)
from penalise.numerics.norms import (
    l1_one_plus_sqrt_norm,
    l1_sqrt_norm,
    l2_norm,
    phi_norm,
    profile_integrand,
    tail_weight,
)
from penalise.numerics.quadrature import integrate_singular, integrate_to_infinity
from penalise.numerics.tilting import TiltingConfig, default_tilt

__all__ = [
    "Integrand1D",
    "TiltingConfig",
    "arcsine_kernel",
    "arcsine_kernel_exponential",
    "arcsine_kernel_values",
    "default_tilt",
    "integrate_singular",
    "integrate_to_infinity",
    "l1_one_plus_sqrt_norm",
    "l1_sqrt_norm",
    "l2_norm",
    "last_exit_expectation",
    "limit_ratio",
    "phi_norm",
    "profile_integrand",
    "tail_weight",
]
