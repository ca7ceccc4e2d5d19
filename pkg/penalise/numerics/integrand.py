"""
Deterministic integrands on (0, ∞).
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from penalise.exceptions import ArgumentError

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Integrand1D:
    """A real function on (0, ∞) evaluated on numpy arrays.

    Attributes:
        evaluator: Vectorised callable, array in, array of the same shape out
        support_hint: Interval [a, b) outside of which the function vanishes
        breakpoints: Known discontinuities, used as forced quadrature splits
        name: Label used in reports
    """

    evaluator: Evaluator
    support_hint: Optional[Tuple[float, float]] = None
    breakpoints: Tuple[float, ...] = field(default_factory=tuple)
    name: str = ""

    def __call__(self, x: "np.ndarray | float") -> np.ndarray:
        arr = np.asarray(x, dtype=float)
        values = np.asarray(self.evaluator(arr), dtype=float)
        if values.shape != arr.shape:
            values = np.broadcast_to(values, arr.shape).copy()
        return values

    @property
    def support_end(self) -> float:
        """Right end of the declared support (∞ when undeclared)."""
        if self.support_hint is None:
            return math.inf
        return float(self.support_hint[1])

    @property
    def support_start(self) -> float:
        """Left end of the declared support (0 when undeclared)."""
        if self.support_hint is None:
            return 0.0
        return max(0.0, float(self.support_hint[0]))

    def absolute(self) -> "Integrand1D":
        """Return |f|."""
        evaluator = self.evaluator
        return Integrand1D(
            evaluator=lambda x: np.abs(evaluator(x)),
            support_hint=self.support_hint,
            breakpoints=self.breakpoints,
            name=f"|{self.name}|",
        )

    def squared(self) -> "Integrand1D":
        """Return |f|²."""
        evaluator = self.evaluator
        return Integrand1D(
            evaluator=lambda x: np.square(evaluator(x)),
            support_hint=self.support_hint,
            breakpoints=self.breakpoints,
            name=f"{self.name}^2",
        )

    def weighted(self, weight: Evaluator, label: str = "w") -> "Integrand1D":
        """Return s ↦ f(s)·weight(s) with the same support and breakpoints."""
        evaluator = self.evaluator

        def product(x: np.ndarray) -> np.ndarray:
            x = np.asarray(x, dtype=float)
            values = np.broadcast_to(np.asarray(evaluator(x), dtype=float), x.shape)
            out = np.zeros(x.shape)
            # the weight is only evaluated where f is non-zero
            nonzero = values != 0.0
            if np.any(nonzero):
                out[nonzero] = values[nonzero] * np.asarray(weight(x[nonzero]), dtype=float)
            return out

        return Integrand1D(
            evaluator=product,
            support_hint=self.support_hint,
            breakpoints=self.breakpoints,
            name=f"{self.name}*{label}",
        )

    def shifted(self, u: float) -> "Integrand1D":
        """Return s ↦ f(s + u)."""
        if u < 0:
            raise ArgumentError(f"Shift must be non-negative, got {u}")
        evaluator = self.evaluator
        support = None
        if self.support_hint is not None:
            lo, hi = self.support_hint
            support = (max(0.0, lo - u), max(0.0, hi - u))
        return Integrand1D(
            evaluator=lambda x: evaluator(np.asarray(x, dtype=float) + u),
            support_hint=support,
            breakpoints=tuple(b - u for b in self.breakpoints if b > u),
            name=f"{self.name}(.+{u:g})",
        )

    def minus(self, other: "Integrand1D") -> "Integrand1D":
        """Return f − g on the union of supports and breakpoints."""
        f_eval, g_eval = self.evaluator, other.evaluator
        support = None
        if self.support_hint is not None and other.support_hint is not None:
            support = (
                min(self.support_hint[0], other.support_hint[0]),
                max(self.support_hint[1], other.support_hint[1]),
            )
        return Integrand1D(
            evaluator=lambda x: np.asarray(f_eval(x), float) - np.asarray(g_eval(x), float),
            support_hint=support,
            breakpoints=tuple(sorted(set(self.breakpoints) | set(other.breakpoints))),
            name=f"{self.name}-{other.name}",
        )

    @classmethod
    def zero(cls) -> "Integrand1D":
        return cls(evaluator=lambda x: np.zeros_like(x), support_hint=(0.0, 0.0), name="0")

    @classmethod
    def indicator(cls, a: float, b: float, level: float = 1.0) -> "Integrand1D":
        """Return level·1_{[a,b)}."""
        if not 0 <= a < b:
            raise ArgumentError(f"Indicator needs 0 <= a < b, got [{a}, {b})")
        return cls(
            evaluator=lambda x: np.where((x >= a) & (x < b), level, 0.0),
            support_hint=(a, b),
            breakpoints=(a, b),
            name=f"{level:g}*1[{a:g},{b:g})",
        )
