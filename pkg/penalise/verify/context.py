"""
Per-check execution context: configuration, tilt and disjoint random streams.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from penalise.measure.expectation import chunk_sizes
from penalise.models.config import SuiteConfig, ToleranceSettings
from penalise.models.estimate import Estimate
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.grid import SeedSpec

# stream indices: check position * CHECK_STREAM_BLOCK + estimate * ESTIMATE_STREAM_BLOCK + chunk
CHECK_STREAM_BLOCK = 10_000_000
ESTIMATE_STREAM_BLOCK = 100_000

Draw = Callable[[SeedSpec, int], Dict[str, np.ndarray]]


@dataclass
class Accumulated:
    """Merged Estimates and running maxima of |value| per named sample."""
    estimates: Dict[str, Estimate] = field(default_factory=dict)
    maxima: Dict[str, float] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Estimate:
        return self.estimates[name]


@dataclass(frozen=True)
class CheckContext:
    """
    Everything a check needs.

    Attributes:
        config: Suite configuration
        tilt: Tilting function built from the configuration
        stream_base: First stream index owned by the check
    """

    config: SuiteConfig
    tilt: TiltingConfig
    stream_base: int

    @property
    def gates(self) -> ToleranceSettings:
        return self.config.tolerances

    @property
    def n_paths(self) -> int:
        return self.config.n_paths

    def seed(self, estimate_index: int) -> SeedSpec:
        """First stream of the estimate_index-th estimate of the check."""
        return SeedSpec(
            root_seed=self.config.seed,
            stream_index=self.stream_base + estimate_index * ESTIMATE_STREAM_BLOCK,
        )

    def chunk_for(self, nodes: int, budget: int = 1 << 21) -> int:
        """Chunk size keeping chunk × nodes below a memory budget."""
        return max(64, min(self.config.chunk_size, budget // max(nodes, 1)))

    def accumulate(
        self, estimate_index: int, draw: Draw, n_paths: int = 0, chunk_size: int = 0
    ) -> Accumulated:
        """
        Run draw over consecutive chunks and merge the results in chunk order.

        Args:
            estimate_index: Selects the block of streams
            draw: Maps (seed, size) to named sample arrays
            n_paths: Total draws (default: configured n_paths)
            chunk_size: Draws per chunk (default: configured chunk_size)

        Returns:
            Accumulated estimates and maxima
        """
        total = n_paths or self.n_paths
        size = chunk_size or self.config.chunk_size
        base = self.seed(estimate_index)
        out = Accumulated()
        for i, count in enumerate(chunk_sizes(total, size)):
            for name, values in draw(base.child(i), count).items():
                values = np.asarray(values, dtype=float)
                batch = Estimate.from_samples(values)
                out.estimates[name] = out.estimates.get(name, Estimate()).merge(batch)
                peak = float(np.max(np.abs(values))) if values.size else 0.0
                out.maxima[name] = max(out.maxima.get(name, 0.0), peak)
        return out
