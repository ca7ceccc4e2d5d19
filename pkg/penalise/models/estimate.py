"""
Mergeable Monte Carlo accumulators for the penalise package.
"""
import math
from typing import Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class Estimate(BaseModel):
    """
    Running sample moments of a scalar functional.

    Central moment sums are kept (not raw powers) and combined with the
    pairwise update formulas, so merging the Estimates of two batches gives
    the Estimate of the concatenated batch up to rounding.
    """
    model_config = ConfigDict(ser_json_inf_nan="constants")

    count: int = Field(0, ge=0, description="Number of finite samples")
    mean: float = Field(0.0, description="Sample mean")
    m2: float = Field(0.0, description="Sum of squared deviations")
    m3: float = Field(0.0, description="Sum of cubed deviations")
    m4: float = Field(0.0, description="Sum of fourth-power deviations")
    non_finite: int = Field(0, ge=0, description="Samples dropped as non-finite")

    @classmethod
    def from_samples(cls, values: Iterable[float]) -> "Estimate":
        """
        Build an Estimate from a batch of samples.

        Args:
            values: Sample values; non-finite entries are counted and dropped

        Returns:
            Estimate of the finite samples
        """
        x = np.asarray(values, dtype=float).ravel()
        finite = np.isfinite(x)
        dropped = int(x.size - np.count_nonzero(finite))
        x = x[finite]
        if x.size == 0:
            return cls(non_finite=dropped)
        mean = float(np.mean(x))
        d = x - mean
        d2 = d * d
        return cls(
            count=int(x.size),
            mean=mean,
            m2=float(np.sum(d2)),
            m3=float(np.sum(d2 * d)),
            m4=float(np.sum(d2 * d2)),
            non_finite=dropped,
        )

    def merge(self, other: "Estimate") -> "Estimate":
        """Combine with the Estimate of a disjoint batch."""
        na, nb = self.count, other.count
        dropped = self.non_finite + other.non_finite
        if na == 0:
            return other.model_copy(update={"non_finite": dropped})
        if nb == 0:
            return self.model_copy(update={"non_finite": dropped})
        n = na + nb
        delta = other.mean - self.mean
        delta_n = delta / n
        cross = delta * delta_n * na * nb
        m2 = self.m2 + other.m2 + cross
        m3 = (
            self.m3 + other.m3
            + cross * delta_n * (na - nb)
            + 3.0 * delta_n * (na * other.m2 - nb * self.m2)
        )
        m4 = (
            self.m4 + other.m4
            + cross * delta_n * delta_n * (na * na - na * nb + nb * nb)
            + 6.0 * delta_n * delta_n * (na * na * other.m2 + nb * nb * self.m2)
            + 4.0 * delta_n * (na * other.m3 - nb * self.m3)
        )
        return Estimate(
            count=n,
            mean=self.mean + delta_n * nb,
            m2=m2,
            m3=m3,
            m4=m4,
            non_finite=dropped,
        )

    @property
    def variance(self) -> float:
        """Unbiased sample variance."""
        if self.count < 2:
            return math.nan
        return self.m2 / (self.count - 1)

    @property
    def stderr(self) -> float:
        """Standard error of the mean, √(m2/(n(n−1)))."""
        if self.count < 2:
            return math.nan
        return math.sqrt(self.m2 / (self.count * (self.count - 1)))

    @property
    def excess_kurtosis(self) -> float:
        if self.count < 2 or self.m2 == 0.0:
            return math.nan
        return self.count * self.m4 / (self.m2 * self.m2) - 3.0

    @property
    def kurtosis_stderr(self) -> float:
        """Large-sample standard error of the excess kurtosis of a Gaussian sample."""
        if self.count < 2:
            return math.nan
        return math.sqrt(24.0 / self.count)

    @property
    def non_finite_fraction(self) -> float:
        total = self.count + self.non_finite
        return self.non_finite / total if total else 0.0


class RatioEstimate(BaseModel):
    """
    Running moments of a pair (A, B) estimating E[A]/E[B] from shared draws.

    The co-moment of A and B is tracked so that the delta-method standard
    error of the ratio is available after any number of merges.
    """
    model_config = ConfigDict(ser_json_inf_nan="constants")

    numerator: Estimate = Field(default_factory=Estimate, description="Moments of A")
    denominator: Estimate = Field(default_factory=Estimate, description="Moments of B")
    co_moment: float = Field(0.0, description="Σ (A − mean A)(B − mean B)")

    @classmethod
    def from_samples(cls, a: Iterable[float], b: Iterable[float]) -> "RatioEstimate":
        x = np.asarray(a, dtype=float).ravel()
        y = np.asarray(b, dtype=float).ravel()
        keep = np.isfinite(x) & np.isfinite(y)
        dropped = int(x.size - np.count_nonzero(keep))
        x, y = x[keep], y[keep]
        numerator = Estimate.from_samples(x).model_copy(update={"non_finite": dropped})
        denominator = Estimate.from_samples(y).model_copy(update={"non_finite": dropped})
        co = float(np.sum((x - numerator.mean) * (y - denominator.mean))) if x.size else 0.0
        return cls(numerator=numerator, denominator=denominator, co_moment=co)

    def merge(self, other: "RatioEstimate") -> "RatioEstimate":
        na, nb = self.numerator.count, other.numerator.count
        co = self.co_moment + other.co_moment
        if na and nb:
            n = na + nb
            co += (
                (other.numerator.mean - self.numerator.mean)
                * (other.denominator.mean - self.denominator.mean)
                * na * nb / n
            )
        return RatioEstimate(
            numerator=self.numerator.merge(other.numerator),
            denominator=self.denominator.merge(other.denominator),
            co_moment=co,
        )

    @property
    def count(self) -> int:
        return self.numerator.count

    @property
    def mean(self) -> float:
        """The ratio E[A]/E[B]."""
        if self.denominator.mean == 0.0:
            return math.nan
        return self.numerator.mean / self.denominator.mean

    @property
    def stderr(self) -> float:
        """Delta-method standard error of the ratio."""
        n = self.count
        if n < 2 or self.denominator.mean == 0.0:
            return math.nan
        r = self.mean
        cov = self.co_moment / (n - 1)
        spread = self.numerator.variance - 2.0 * r * cov + r * r * self.denominator.variance
        return math.sqrt(max(spread, 0.0) / n) / abs(self.denominator.mean)
