"""
Step functions on [0, ∞), the integrands of every Wiener-integral computation.
"""
import json
import math
from dataclasses import dataclass
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np

from penalise.exceptions import ArgumentError, StepFunctionParseError
from penalise.numerics.integrand import Integrand1D

Pair = Tuple[float, float]


@dataclass(frozen=True, eq=False)
class StepFunction:
    """
    f = Σ c_k 1_{[t_{k−1}, t_k)} with 0 = t₀ < t₁ < … < t_n.

    Attributes:
        breakpoints: t₀, …, t_n (t₀ = 0)
        levels: c₁, …, c_n
    """

    breakpoints: np.ndarray
    levels: np.ndarray

    def __post_init__(self) -> None:
        breakpoints = np.array(self.breakpoints, dtype=float).ravel()
        levels = np.array(self.levels, dtype=float).ravel()
        if breakpoints.size == 0:
            breakpoints = np.zeros(1)
        if breakpoints.size != levels.size + 1:
            raise ArgumentError(
                f"{breakpoints.size} breakpoints need {breakpoints.size - 1} levels, got {levels.size}"
            )
        if breakpoints[0] != 0.0:
            raise ArgumentError(f"First breakpoint must be 0, got {breakpoints[0]}")
        if not (np.all(np.isfinite(breakpoints)) and np.all(np.isfinite(levels))):
            raise ArgumentError("Breakpoints and levels must be finite")
        if np.any(np.diff(breakpoints) <= 0):
            raise ArgumentError("Breakpoints must be strictly increasing")
        breakpoints.flags.writeable = False
        levels.flags.writeable = False
        object.__setattr__(self, "breakpoints", breakpoints)
        object.__setattr__(self, "levels", levels)

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls(np.zeros(1), np.zeros(0))

    @classmethod
    def indicator(cls, a: float, b: float, level: float = 1.0) -> "StepFunction":
        """level·1_{[a,b)}."""
        if not 0 <= a < b:
            raise ArgumentError(f"Indicator needs 0 <= a < b, got [{a}, {b})")
        if a == 0:
            return cls(np.array([0.0, b]), np.array([level]))
        return cls(np.array([0.0, a, b]), np.array([0.0, level]))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[float]]) -> "StepFunction":
        """
        Build from (t_k, c_k) pairs, c_k being the value on [t_{k−1}, t_k).

        Args:
            pairs: Pairs with strictly increasing positive t_k

        Returns:
            StepFunction
        """
        rows = [tuple(p) for p in pairs]
        if any(len(p) != 2 for p in rows):
            raise ArgumentError("Every pair must have exactly two entries (t_k, c_k)")
        times = [0.0] + [float(t) for t, _ in rows]
        return cls(np.array(times), np.array([float(c) for _, c in rows]))

    @classmethod
    def from_json(cls, text: str) -> "StepFunction":
        """
        Parse a JSON array of [t_k, c_k] pairs.

        Raises:
            StepFunctionParseError: With line, column and character position
                for malformed JSON, or the index of the offending pair
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise StepFunctionParseError(
                f"Malformed step function JSON at line {e.lineno} column {e.colno} "
                f"(char {e.pos}): {e.msg}"
            ) from e
        return cls.from_data(data)

    @classmethod
    def from_data(cls, data: Any) -> "StepFunction":
        """Validate already-decoded JSON pairs."""
        if not isinstance(data, list):
            raise StepFunctionParseError("Step function must be a JSON array of [t, c] pairs")
        previous = 0.0
        for index, pair in enumerate(data):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise StepFunctionParseError(f"Pair at index {index} must be a [t, c] array")
            if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair):
                raise StepFunctionParseError(f"Pair at index {index} must contain numbers")
            t, c = float(pair[0]), float(pair[1])
            if not (math.isfinite(t) and math.isfinite(c)):
                raise StepFunctionParseError(f"Pair at index {index} is not finite")
            if t <= previous:
                raise StepFunctionParseError(
                    f"Pair at index {index}: breakpoint {t} must exceed {previous}"
                )
            previous = t
        return cls.from_pairs(data)

    def to_pairs(self) -> List[List[float]]:
        return [[float(t), float(c)] for t, c in zip(self.breakpoints[1:], self.levels)]

    @property
    def n(self) -> int:
        return int(self.levels.size)

    @property
    def support_end(self) -> float:
        return float(self.breakpoints[-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.breakpoints)

    def evaluate(self, s: Union[np.ndarray, float]) -> np.ndarray:
        """Value c_k on [t_{k−1}, t_k), 0 elsewhere."""
        s = np.asarray(s, dtype=float)
        index = np.searchsorted(self.breakpoints, s, side="right") - 1
        inside = (index >= 0) & (index < self.n)
        if self.n == 0:
            return np.zeros(s.shape)
        return np.where(inside, self.levels[np.clip(index, 0, self.n - 1)], 0.0)

    __call__ = evaluate

    def as_integrand(self, name: str = "step") -> Integrand1D:
        return Integrand1D(
            evaluator=self.evaluate,
            support_hint=(0.0, self.support_end),
            breakpoints=tuple(float(t) for t in self.breakpoints[1:]),
            name=name,
        )

    def l2_norm_squared(self) -> float:
        return float(np.dot(self.levels * self.levels, self.widths))

    def l2_norm(self) -> float:
        return math.sqrt(self.l2_norm_squared())

    def integral(self) -> float:
        """∫₀^∞ f(s) ds."""
        return float(np.dot(self.levels, self.widths))

    def sqrt_weighted_integral(self) -> float:
        """∫₀^∞ f(s) ds/√s = Σ c_k·2(√t_k − √t_{k−1})."""
        return float(np.dot(self.levels, 2.0 * np.diff(np.sqrt(self.breakpoints))))

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.levels))) if self.n else 0.0

    def refine(self, points: Iterable[float]) -> "StepFunction":
        """Same function with extra breakpoints inserted."""
        extra = np.asarray([p for p in points if p > 0], dtype=float)
        merged = np.union1d(self.breakpoints, extra)
        return StepFunction(merged, self.evaluate(merged[:-1]))

    def restrict(self, a: float, b: float) -> "StepFunction":
        """f·1_{[a,b)} with a and b inserted as breakpoints."""
        if a < 0 or b < a:
            raise ArgumentError(f"restrict needs 0 <= a <= b, got [{a}, {b})")
        if b == a:
            return StepFunction.zero()
        refined = self.refine((a, b))
        left = refined.breakpoints[:-1]
        keep = refined.breakpoints <= b
        levels = np.where((left >= a) & (left < b), refined.levels, 0.0)
        return StepFunction(refined.breakpoints[keep], levels[: int(np.count_nonzero(keep)) - 1])

    def canonical(self) -> "StepFunction":
        """Merge equal neighbouring levels and drop trailing zero cells."""
        if self.n == 0:
            return self
        change = np.flatnonzero(np.diff(self.levels) != 0.0) + 1
        starts = np.concatenate(([0], change))
        ends = np.concatenate((change, [self.n]))
        breakpoints = np.concatenate(([0.0], self.breakpoints[ends]))
        levels = self.levels[starts]
        while levels.size and levels[-1] == 0.0:
            levels = levels[:-1]
            breakpoints = breakpoints[:-1]
        return StepFunction(breakpoints, levels)

    def _combine(self, other: "StepFunction", sign: float) -> "StepFunction":
        merged = np.union1d(self.breakpoints, other.breakpoints)
        left = merged[:-1]
        return StepFunction(merged, self.evaluate(left) + sign * other.evaluate(left))

    def __add__(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, 1.0)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        return self._combine(other, -1.0)

    def __mul__(self, scalar: float) -> "StepFunction":
        return StepFunction(self.breakpoints, float(scalar) * self.levels)

    __rmul__ = __mul__

    def __neg__(self) -> "StepFunction":
        return self * -1.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return np.array_equal(a.breakpoints, b.breakpoints) and np.array_equal(a.levels, b.levels)

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.breakpoints.tobytes(), c.levels.tobytes()))

    def __repr__(self) -> str:
        return f"StepFunction({self.to_pairs()})"
