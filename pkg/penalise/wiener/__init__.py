"""
Wiener integrals of deterministic step integrands.
"""
from penalise.wiener.decomposition import (
    decompose_batch,
    decompose_integral,
    partial_integrals,
    partial_integrals_batch,
)
from penalise.wiener.integrals import (
    IntegralValue,
    bessel_centered_batch,
    bessel_centering,
    bessel_integral_centered,
    bridge_integral,
    stieltjes,
    stieltjes_batch,
    values_at,
)
from penalise.wiener.moments import centered_tail_batch, holder_bounds, holder_increment_moment

__all__ = [
    "IntegralValue",
    "bessel_centered_batch",
    "bessel_centering",
    "bessel_integral_centered",
    "bridge_integral",
    "centered_tail_batch",
    "decompose_batch",
    "decompose_integral",
    "holder_bounds",
    "holder_increment_moment",
    "partial_integrals",
    "partial_integrals_batch",
    "stieltjes",
    "stieltjes_batch",
    "values_at",
]
