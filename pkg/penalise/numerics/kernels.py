"""
The arcsine kernel K_φ(s) = ∫₀^s φ(u) du/√(u(s−u)) and its large-time limit.
"""
import math
from typing import Tuple, Union

import numpy as np
from scipy import special

from penalise.exceptions import ArgumentError
from penalise.numerics.integrand import Integrand1D
from penalise.numerics.quadrature import integrate_singular
from penalise.numerics.tilting import TiltingConfig

PhiLike = Union[Integrand1D, TiltingConfig]


def _resolve(phi: PhiLike) -> Tuple[Integrand1D, float]:
    if isinstance(phi, TiltingConfig):
        return phi.phi, phi.effective_support
    return phi, phi.support_end


def arcsine_kernel(phi: PhiLike, s: float) -> float:
    """
    Compute ∫₀^s φ(u) du/√(u(s−u)).

    Both endpoints carry an inverse-square-root singularity. When s is more
    than twice the effective support of φ only [0, support] is integrated and
    the right end is regular.

    Args:
        phi: Tilting function, bare or with its effective support
        s: Upper limit, s > 0

    Returns:
        The kernel value, at most φ(0+)·π

    Raises:
        ArgumentError: If s <= 0
    """
    if not s > 0:
        raise ArgumentError(f"arcsine_kernel needs s > 0, got {s}")
    function, cutoff = _resolve(phi)

    def integrand(u: np.ndarray) -> np.ndarray:
        return function(u) / np.sqrt(u * (s - u))

    if s <= 2.0 * cutoff:
        return integrate_singular(
            integrand, 0.0, s, singular_left=True, singular_right=True,
            breakpoints=function.breakpoints,
        )
    return integrate_singular(
        integrand, 0.0, cutoff, singular_left=True, breakpoints=function.breakpoints
    )


def arcsine_kernel_values(phi: PhiLike, s: np.ndarray) -> np.ndarray:
    """Evaluate arcsine_kernel elementwise."""
    s = np.asarray(s, dtype=float)
    flat = np.array([arcsine_kernel(phi, float(x)) for x in s.ravel()])
    return flat.reshape(s.shape)


def arcsine_kernel_exponential(rate: float, s: "np.ndarray | float") -> np.ndarray:
    """Closed form π·e^{-rs/2}I₀(rs/2) of the kernel for φ(u) = e^{-ru}."""
    return math.pi * special.i0e(0.5 * rate * np.asarray(s, dtype=float))


def limit_ratio(phi: PhiLike, t: float) -> float:
    """
    Return √t·K_φ(t), which tends to C_φ as t → ∞.

    Args:
        phi: Tilting function
        t: Time, t > 0

    Returns:
        √t times the arcsine kernel at t
    """
    if not t > 0:
        raise ArgumentError(f"limit_ratio needs t > 0, got {t}")
    return math.sqrt(t) * arcsine_kernel(phi, t)


def last_exit_expectation(phi: PhiLike, t: float) -> float:
    """W[φ(g^{(t)})] = K_φ(t)/π, the arcsine-law expectation of φ."""
    return arcsine_kernel(phi, t) / math.pi
