"""
Tilting functions φ that turn 𝒲 into the finite measure μ_φ.
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy import special

from penalise.exceptions import ConfigurationError
from penalise.models.config import TiltSettings
from penalise.numerics.integrand import Integrand1D
from penalise.numerics.quadrature import integrate_to_infinity

# φ is treated as zero beyond the first power of two where it drops below
# this fraction of φ(0+)
SUPPORT_CUTOFF = 1e-17
_MAX_SUPPORT_EXPONENT = 60
_ENVELOPE_LIMIT = 1e6


def _effective_support(phi: Integrand1D, phi_zero: float) -> float:
    end = phi.support_end
    for k in range(-10, _MAX_SUPPORT_EXPONENT):
        point = 2.0 ** k
        if point >= end or float(phi(np.array([point]))[0]) <= SUPPORT_CUTOFF * phi_zero:
            return min(point, end)
    return 2.0 ** _MAX_SUPPORT_EXPONENT


@dataclass(frozen=True)
class TiltingConfig:
    """
    An admissible tilting function with its normalising constant.

    Attributes:
        phi: The tilting function
        c_phi: C_φ = ∫₀^∞ φ(u) u^{-1/2} du
        phi_at_zero: φ(0+)
        effective_support: Point beyond which φ is numerically zero
        rate: Exponential rate when φ(u) = e^{-rate·u}; enables exact u-sampling
        envelope: sup φ(u)e^u used for rejection sampling of u
        name: Label used in reports
    """

    phi: Integrand1D
    c_phi: float
    phi_at_zero: float
    effective_support: float
    rate: Optional[float] = None
    envelope: float = math.nan
    name: str = ""

    @classmethod
    def exponential(cls, rate: float = 1.0) -> "TiltingConfig":
        """φ(u) = e^{-rate·u}, with C_φ = √(π/rate)."""
        if not rate > 0:
            raise ConfigurationError(f"Exponential tilt needs rate > 0, got {rate}")
        phi = Integrand1D(evaluator=lambda u: np.exp(-rate * u), name=f"exp(-{rate:g}u)")
        support = 2.0 ** math.ceil(math.log2(-math.log(SUPPORT_CUTOFF) / rate))
        return cls(
            phi=phi,
            c_phi=math.sqrt(math.pi / rate),
            phi_at_zero=1.0,
            effective_support=support,
            rate=rate,
            envelope=1.0 if rate >= 1.0 else math.inf,
            name=phi.name,
        )

    @classmethod
    def indicator(cls, cutoff: float = 1.0) -> "TiltingConfig":
        """φ = 1_{(0, cutoff]}, with C_φ = 2√cutoff."""
        if not cutoff > 0:
            raise ConfigurationError(f"Indicator tilt needs cutoff > 0, got {cutoff}")
        phi = Integrand1D(
            evaluator=lambda u: np.where(u <= cutoff, 1.0, 0.0),
            support_hint=(0.0, cutoff),
            breakpoints=(cutoff,),
            name=f"1(0,{cutoff:g}]",
        )
        return cls(
            phi=phi,
            c_phi=2.0 * math.sqrt(cutoff),
            phi_at_zero=1.0,
            effective_support=cutoff,
            envelope=math.exp(cutoff),
            name=phi.name,
        )

    @classmethod
    def from_callable(
        cls,
        phi: "Callable[[np.ndarray], np.ndarray] | Integrand1D",
        name: str = "phi",
    ) -> "TiltingConfig":
        """
        Validate an arbitrary tilting function numerically.

        Args:
            phi: Vectorised φ on (0, ∞)
            name: Label used in reports

        Returns:
            TiltingConfig for φ

        Raises:
            ConfigurationError: If φ is negative, increasing, unbounded at 0+
                or has C_φ infinite or zero
        """
        integrand = phi if isinstance(phi, Integrand1D) else Integrand1D(evaluator=phi, name=name)
        probe = np.concatenate(([1e-12], np.logspace(-9, 12, 400)))
        with np.errstate(all="ignore"):
            values = integrand(probe)
        if not np.all(np.isfinite(values)):
            raise ConfigurationError(f"Tilting function {name} is not finite on (0, ∞)")
        if np.any(values < 0):
            raise ConfigurationError(f"Tilting function {name} takes negative values")
        if np.any(np.diff(values) > 1e-12 * max(values[0], 1.0)):
            raise ConfigurationError(f"Tilting function {name} is not non-increasing")
        phi_zero = float(values[0])
        if phi_zero <= 0:
            raise ConfigurationError(f"Tilting function {name} vanishes near 0")

        support = _effective_support(integrand, phi_zero)
        weighted = integrand.weighted(lambda u: 1.0 / np.sqrt(u), "u^-1/2")
        c_phi = integrate_to_infinity(weighted, 0.0, singular_left=True)
        if not (math.isfinite(c_phi) and c_phi > 0):
            raise ConfigurationError(f"C_φ of {name} is not finite and positive: {c_phi}")

        grid = np.linspace(0.0, support, 4097)[1:]
        if integrand.support_hint is not None and math.isfinite(integrand.support_end):
            grid = np.append(grid, np.nextafter(integrand.support_end, 0.0))
        with np.errstate(over="ignore"):
            ratios = integrand(grid) * np.exp(grid)
        envelope = 1.05 * float(np.max(ratios))
        if not envelope <= _ENVELOPE_LIMIT * phi_zero:
            envelope = math.inf
        return cls(
            phi=integrand,
            c_phi=c_phi,
            phi_at_zero=phi_zero,
            effective_support=support,
            envelope=envelope,
            name=name,
        )

    @classmethod
    def from_settings(cls, settings: TiltSettings) -> "TiltingConfig":
        if settings.kind == "indicator":
            return cls.indicator(settings.cutoff)
        return cls.exponential(settings.rate)

    def density(self, u: np.ndarray) -> np.ndarray:
        """Density φ(u)/(C_φ√u) of the last-exit time under μ_φ."""
        u = np.asarray(u, dtype=float)
        return self.phi(u) / (self.c_phi * np.sqrt(u))

    def tail_mass(self, horizon: float) -> float:
        """μ_φ(u > horizon)."""
        if horizon >= self.phi.support_end:
            return 0.0
        if self.rate is not None:
            return float(special.gammaincc(0.5, self.rate * horizon))
        weighted = self.phi.weighted(lambda u: 1.0 / np.sqrt(u), "u^-1/2")
        return integrate_to_infinity(weighted, horizon) / self.c_phi

    @property
    def w_mass(self) -> float:
        """𝒲[φ(g)] = C_φ/√(2π)."""
        return self.c_phi / math.sqrt(2.0 * math.pi)


def default_tilt() -> TiltingConfig:
    """φ(u) = e^{-u}."""
    return TiltingConfig.exponential(1.0)
