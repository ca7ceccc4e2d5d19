"""
Seeded path simulation and path operations.
"""
from penalise.paths.export import path_to_csv
from penalise.paths.grid import SamplePath, SeedSpec, TimeGrid
from penalise.paths.operations import concat, last_exit, last_exit_batch, shift_path, symmetrize
from penalise.paths.samplers import (
    sample_bessel3,
    sample_bessel3_batch,
    sample_bm,
    sample_bm_batch,
    sample_bridge,
    sample_bridge_batch,
)

__all__ = [
    "SamplePath",
    "SeedSpec",
    "TimeGrid",
    "concat",
    "last_exit",
    "last_exit_batch",
    "path_to_csv",
    "sample_bessel3",
    "sample_bessel3_batch",
    "sample_bm",
    "sample_bm_batch",
    "sample_bridge",
    "sample_bridge_batch",
    "shift_path",
    "symmetrize",
]
