"""
Tilted-path simulation tasks for Prefect workflows.
"""
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from prefect import get_run_logger, task
from prefect.cache_policies import NO_CACHE

from penalise.funcspace.step import StepFunction
from penalise.measure.tilted import TiltedBatch, sample_tilted_batch
from penalise.models.config import SuiteConfig
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.export import path_to_csv
from penalise.paths.grid import SeedSpec, TimeGrid
from penalise.wiener.decomposition import decompose_batch, partial_integrals_batch

# stream blocks owned by simulate and integrate, above every check block
SIMULATION_STREAM_BASE = 2_000_000_000
INTEGRATION_STREAM_BASE = 3_000_000_000
# paths drawn together from one simulation stream
SIMULATION_BLOCK = 32


def block_seed(config: SuiteConfig, block: int) -> SeedSpec:
    """Stream of the block-th group of SIMULATION_BLOCK simulated paths."""
    return SeedSpec(root_seed=config.seed, stream_index=SIMULATION_STREAM_BASE + block)


def sample_block(config: SuiteConfig, block: int) -> TiltedBatch:
    """Paths block·SIMULATION_BLOCK onwards, observed on the Δ-grid."""
    tilt = TiltingConfig.from_settings(config.tilt)
    grid = TimeGrid.uniform(config.horizon, config.dt)
    return sample_tilted_batch(tilt, config.horizon, grid.times, block_seed(config, block), SIMULATION_BLOCK)


@task(name="simulate_chunk_task", cache_policy=NO_CACHE)
def simulate_chunk_task(config: SuiteConfig, start: int, count: int) -> List[Dict[str, Any]]:
    """
    Simulate tilted paths start .. start+count-1 on the Δ-grid.

    Paths are drawn in blocks of SIMULATION_BLOCK sharing one stream, so a
    path does not depend on the chunking. Each row carries u, the sign ε, and
    g_check: the last zero of the concatenated path before the horizon,
    recomputed from the path itself.

    Args:
        config: Suite configuration
        start: Index of the first path
        count: Number of paths

    Returns:
        List of summary rows
    """
    logger = get_run_logger()
    rows = []
    stop = start + count
    for block in range(start // SIMULATION_BLOCK, (stop - 1) // SIMULATION_BLOCK + 1):
        batch = sample_block(config, block)
        g_check = batch.last_exits()
        first = block * SIMULATION_BLOCK
        for index in range(max(start, first), min(stop, first + SIMULATION_BLOCK)):
            i = index - first
            rows.append({
                "path": index,
                "u": float(batch.u[i]),
                "sign": int(batch.sign[i]),
                "g_check": float(g_check[i]),
            })
    logger.info(f"Simulated paths {start}..{stop - 1}")
    return rows


@task(name="dump_path_task", cache_policy=NO_CACHE)
def dump_path_task(config: SuiteConfig, index: int, out_dir: str) -> str:
    """
    Write the full index-th simulated path as CSV.

    Args:
        config: Suite configuration
        index: Path index (same block stream as simulate_chunk_task)
        out_dir: Directory receiving paths/path_<index>.csv

    Returns:
        Path of the written file
    """
    batch = sample_block(config, index // SIMULATION_BLOCK)
    target = Path(out_dir) / "paths" / f"path_{index}.csv"
    return str(path_to_csv(batch.path(index % SIMULATION_BLOCK), target))


@task(name="integrate_chunk_task", cache_policy=NO_CACHE)
def integrate_chunk_task(
    config: SuiteConfig,
    f: StepFunction,
    t_grid: Sequence[float],
    chunk_index: int,
    start: int,
    count: int,
) -> Tuple[List[Dict[str, Any]], List[Dict[str, Any]]]:
    """
    Evaluate the decomposition and the I_t trajectory of f on tilted draws.

    Args:
        config: Suite configuration
        f: Step function supported within the horizon
        t_grid: Times of the I_t trajectory
        chunk_index: Chunk number, selecting the random stream
        start: Index of the first path in the chunk
        count: Number of draws

    Returns:
        (integral rows with whole, j1, j2, residual; trajectory rows with t, I_t)
    """
    tilt = TiltingConfig.from_settings(config.tilt)
    times = TimeGrid.explicit(list(f.breakpoints) + list(t_grid)).times
    seed = SeedSpec(root_seed=config.seed, stream_index=INTEGRATION_STREAM_BASE + chunk_index)
    batch = sample_tilted_batch(tilt, config.horizon, times, seed, count)
    whole, j1, j2 = decompose_batch(f, batch)
    residual = np.abs(whole - (j1 + j2))
    rows = [
        {
            "path": start + i, "u": float(batch.u[i]), "sign": int(batch.sign[i]),
            "whole": float(whole[i]), "j1": float(j1[i]), "j2": float(j2[i]),
            "residual": float(residual[i]),
        }
        for i in range(count)
    ]
    trajectory = []
    if len(t_grid):
        partial = partial_integrals_batch(f, batch, t_grid)
        for i in range(count):
            for k, t in enumerate(t_grid):
                trajectory.append({"path": start + i, "t": float(t), "I_t": float(partial[i, k])})
    return rows, trajectory
