"""
Weighted norms of deterministic integrands.
"""
import math

import numpy as np
from prefect.logging import get_logger

from penalise.models.profile import IntegrandProfile
from penalise.numerics.integrand import Integrand1D
from penalise.numerics.kernels import arcsine_kernel_values
from penalise.numerics.quadrature import integrate_to_infinity
from penalise.numerics.tilting import TiltingConfig

logger = get_logger(__name__)


def _inv_sqrt(s: np.ndarray) -> np.ndarray:
    return 1.0 / np.sqrt(s)


def _inv_one_plus_sqrt(s: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.sqrt(s))


def l2_norm(f: Integrand1D) -> float:
    """(∫|f|² ds)^{1/2}."""
    value = integrate_to_infinity(f.squared(), 0.0, singular_left=True)
    return math.sqrt(value) if math.isfinite(value) else math.inf


def l1_sqrt_norm(f: Integrand1D) -> float:
    """∫|f(s)| ds/√s."""
    return integrate_to_infinity(
        f.absolute().weighted(_inv_sqrt, "s^-1/2"), 0.0, singular_left=True
    )


def l1_one_plus_sqrt_norm(f: Integrand1D) -> float:
    """∫|f(s)| ds/(1+√s)."""
    return integrate_to_infinity(
        f.absolute().weighted(_inv_one_plus_sqrt, "(1+s^1/2)^-1"), 0.0, singular_left=True
    )


def phi_norm(f: Integrand1D, tilt: TiltingConfig) -> float:
    """
    Compute ‖f‖_φ = ∫₀^∞ du φ(u)/√u ∫₀^∞ |f(s+u)| ds/√s in its Fubini form.

    Exchanging the order of integration gives ∫₀^∞ |f(s)| K_φ(s) ds with the
    arcsine kernel K_φ, which is bounded by φ(0+)π.

    Args:
        f: Integrand
        tilt: Tilting function

    Returns:
        The norm, or math.inf when the dyadic tail diverges
    """
    weighted = f.absolute().weighted(lambda s: arcsine_kernel_values(tilt, s), "K_phi")
    return integrate_to_infinity(weighted, 0.0, singular_left=True)


def tail_weight(f: Integrand1D, u: float) -> float:
    """∫₀^∞ |f(s+u)| ds/√s; finite for every u when f ∈ L¹(ds/√s)."""
    return l1_sqrt_norm(f.shifted(u))


def profile_integrand(f: Integrand1D, tilt: TiltingConfig) -> IntegrandProfile:
    """
    Compute every weighted norm of f.

    Args:
        f: Integrand on (0, ∞)
        tilt: Tilting function for ‖·‖_φ

    Returns:
        IntegrandProfile with math.inf for divergent norms
    """
    profile = IntegrandProfile(
        name=f.name,
        l2_norm=l2_norm(f),
        l1_sqrt_norm=l1_sqrt_norm(f),
        l1_one_plus_sqrt_norm=l1_one_plus_sqrt_norm(f),
        phi_norm=phi_norm(f, tilt),
    )
    if profile.phi_finite != profile.in_l1_one_plus_sqrt:
        logger.warning(
            "Norm classes disagree for %s: phi_norm=%r, l1_one_plus_sqrt=%r",
            f.name, profile.phi_norm, profile.l1_one_plus_sqrt_norm,
        )
    return profile
