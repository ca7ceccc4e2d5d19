"""
Exact finite-dimensional samplers for Brownian motion, the Brownian bridge and
the 3-dimensional Bessel process.
"""
from typing import Tuple

import numpy as np
from prefect.logging import get_logger

from penalise.exceptions import ArgumentError
from penalise.paths.grid import NODE_TOLERANCE, SamplePath, SeedSpec, TimeGrid

logger = get_logger(__name__)


def gaussian_walk(
    rng: np.random.Generator, times: np.ndarray, n_paths: int, dims: int = 1
) -> np.ndarray:
    """
    Partial sums of independent N(0, Δt) increments.

    Args:
        rng: Random generator
        times: Grid nodes, times[0] = 0
        n_paths: Number of paths
        dims: Number of independent coordinates

    Returns:
        Array of shape (n_paths, len(times)) or (n_paths, len(times), dims)
    """
    steps = np.sqrt(np.diff(times))
    shape = (n_paths, times.size - 1) if dims == 1 else (n_paths, times.size - 1, dims)
    increments = rng.standard_normal(shape)
    increments *= steps[:, None] if dims > 1 else steps
    walk = np.zeros((n_paths, times.size) + shape[2:])
    np.cumsum(increments, axis=1, out=walk[:, 1:])
    return walk


def _check_count(n_paths: int) -> None:
    if n_paths < 1:
        raise ArgumentError(f"n_paths must be positive, got {n_paths}")


def sample_bm_batch(grid: TimeGrid, seed: SeedSpec, n_paths: int) -> np.ndarray:
    """Brownian motion started at 0, shape (n_paths, len(grid))."""
    _check_count(n_paths)
    return gaussian_walk(seed.generator(), grid.times, n_paths)


def sample_bm(grid: TimeGrid, seed: SeedSpec) -> SamplePath:
    """One Brownian path on the grid."""
    return SamplePath(grid, sample_bm_batch(grid, seed, 1)[0])


def bridge_from_bm(times: np.ndarray, bm: np.ndarray) -> np.ndarray:
    """B_s − (s/u)B_u on a grid ending at u; the last column is exactly 0."""
    ratio = times / times[-1]
    return bm - ratio * bm[..., -1:]


def sample_bridge_batch(
    u: float, grid: TimeGrid, seed: SeedSpec, n_paths: int
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Brownian bridges of length u and the Brownian motions they were built from.

    Args:
        u: Bridge length, u > 0
        grid: Grid spanning exactly [0, u]
        seed: Random stream
        n_paths: Number of paths

    Returns:
        (bridges, generators), both of shape (n_paths, len(grid))
    """
    if not u > 0:
        raise ArgumentError(f"Bridge length must be positive, got {u}")
    if abs(grid.span - u) > NODE_TOLERANCE * max(1.0, u):
        raise ArgumentError(f"Bridge grid must end at u = {u}, ends at {grid.span}")
    bm = sample_bm_batch(grid, seed, n_paths)
    return bridge_from_bm(grid.times, bm), bm


def sample_bridge(u: float, grid: TimeGrid, seed: SeedSpec) -> SamplePath:
    """One Brownian bridge of length u carrying its generating Brownian motion."""
    bridges, bm = sample_bridge_batch(u, grid, seed, 1)
    return SamplePath(grid, bridges[0], generator=bm[0])


def sample_bessel3_batch(grid: TimeGrid, seed: SeedSpec, n_paths: int) -> np.ndarray:
    """Norms of 3-dimensional Brownian motions started at 0."""
    _check_count(n_paths)
    walk = gaussian_walk(seed.generator(), grid.times, n_paths, dims=3)
    values = np.sqrt(np.sum(walk * walk, axis=-1))
    zeros = np.count_nonzero(values[:, 1:] == 0.0)
    if zeros:
        logger.warning("Bessel(3) sampler produced %d zero values after time 0", zeros)
    return values


def sample_bessel3(grid: TimeGrid, seed: SeedSpec) -> SamplePath:
    """One Bessel(3) path on the grid."""
    return SamplePath(grid, sample_bessel3_batch(grid, seed, 1)[0])
