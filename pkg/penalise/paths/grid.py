"""
Time grids, sample paths and seed streams.
"""
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from penalise.exceptions import ArgumentError

NODE_TOLERANCE = 1e-12


class SeedSpec(BaseModel):
    """A (root seed, stream index) pair naming one independent random stream."""
    model_config = ConfigDict(frozen=True)

    root_seed: int = Field(..., ge=0, lt=2 ** 64, description="64-bit root seed")
    stream_index: int = Field(0, ge=0, description="Index of the stream under the root seed")

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.root_seed, spawn_key=(self.stream_index,))
        return np.random.default_rng(sequence)

    def child(self, offset: int) -> "SeedSpec":
        """The stream `offset` positions further under the same root."""
        return SeedSpec(root_seed=self.root_seed, stream_index=self.stream_index + offset)


@dataclass(frozen=True)
class TimeGrid:
    """
    Strictly increasing times starting at 0.

    Attributes:
        times: Grid nodes, times[0] = 0
        resolution: Spacing Δ for uniform grids, None for explicit ones
    """

    times: np.ndarray
    resolution: Optional[float] = None

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float).ravel()
        if times.size == 0:
            raise ArgumentError("Time grid is empty")
        if times[0] != 0.0:
            raise ArgumentError(f"Time grid must start at 0, got {times[0]}")
        if not np.all(np.isfinite(times)) or np.any(np.diff(times) <= 0):
            raise ArgumentError("Time grid must be finite and strictly increasing")
        times.flags.writeable = False
        object.__setattr__(self, "times", times)

    @classmethod
    def uniform(cls, horizon: float, dt: float) -> "TimeGrid":
        """
        Nodes k·dt up to horizon; horizon itself is appended when it is not a multiple.

        Args:
            horizon: Last node, > 0
            dt: Spacing, > 0
        """
        if not (horizon > 0 and dt > 0):
            raise ArgumentError(f"Uniform grid needs horizon > 0 and dt > 0, got {horizon}, {dt}")
        n = int(math.floor(horizon / dt + NODE_TOLERANCE))
        times = dt * np.arange(n + 1)
        if horizon - times[-1] > NODE_TOLERANCE * max(1.0, horizon):
            times = np.append(times, horizon)
        else:
            times[-1] = horizon
        return cls(times, resolution=dt)

    @classmethod
    def explicit(cls, times: Iterable[float]) -> "TimeGrid":
        """Grid on the given times, with 0 prepended when missing."""
        arr = np.unique(np.asarray(list(times), dtype=float))
        if arr.size == 0 or arr[0] != 0.0:
            arr = np.concatenate(([0.0], arr[arr > 0]))
        return cls(arr)

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def span(self) -> float:
        return float(self.times[-1])

    def index_of(self, t: float) -> int:
        """
        Index of the node equal to t within tolerance; the closest one when two qualify.

        Raises:
            ArgumentError: If t is not a grid node
        """
        i = int(np.searchsorted(self.times, t))
        candidates = [j for j in (i - 1, i) if 0 <= j < len(self)]
        j = min(candidates, key=lambda c: abs(self.times[c] - t))
        if abs(self.times[j] - t) <= NODE_TOLERANCE * max(1.0, abs(t)):
            return j
        raise ArgumentError(f"Time {t} is not a node of the grid")

    def with_node(self, t: float) -> "TimeGrid":
        """Insert t as a node, replacing a node within tolerance of it."""
        if t < 0:
            raise ArgumentError(f"Cannot insert negative time {t}")
        if t == 0.0:
            return self
        close = np.abs(self.times - t) <= NODE_TOLERANCE * max(1.0, t)
        close[0] = False
        times = np.sort(np.append(self.times[~close], t))
        return TimeGrid(times, resolution=self.resolution)


@dataclass(frozen=True)
class SamplePath:
    """
    Values of a path on a grid, read piecewise-linearly between nodes.

    Attributes:
        grid: Time grid
        values: Path values, one per node
        generator: For bridges, the Brownian motion the bridge was built from
    """

    grid: TimeGrid
    values: np.ndarray
    generator: Optional[np.ndarray] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float).ravel()
        if values.size != len(self.grid):
            raise ArgumentError(f"{values.size} values for a grid of {len(self.grid)} nodes")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def value_at(self, t: "np.ndarray | float") -> np.ndarray:
        """Piecewise-linear value at arbitrary times inside the span."""
        return np.interp(t, self.grid.times, self.values)
