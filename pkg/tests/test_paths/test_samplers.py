"""
Tests for the samplers module.
"""
import numpy as np
import pytest

from penalise.exceptions import ArgumentError
from penalise.paths.grid import SeedSpec, TimeGrid
from penalise.paths.samplers import (
    sample_bessel3,
    sample_bessel3_batch,
    sample_bm,
    sample_bm_batch,
    sample_bridge,
    sample_bridge_batch,
)

N_PATHS = 20000


@pytest.mark.unit
def test_bm_shape_and_start(seed: SeedSpec) -> None:
    """Test that Brownian paths start at 0 and have one column per node."""
    grid = TimeGrid.uniform(1.0, 0.125)
    paths = sample_bm_batch(grid, seed, 10)
    assert paths.shape == (10, 9)
    assert np.all(paths[:, 0] == 0.0)


@pytest.mark.unit
def test_bm_covariance(seed: SeedSpec) -> None:
    """Test Var B_1 = 1 and Cov(B_1, B_2) = 1."""
    grid = TimeGrid.explicit([1.0, 2.0])
    paths = sample_bm_batch(grid, seed, N_PATHS)
    assert np.var(paths[:, 1]) == pytest.approx(1.0, abs=0.05)
    assert np.mean(paths[:, 1] * paths[:, 2]) == pytest.approx(1.0, abs=0.06)
    assert np.var(paths[:, 2]) == pytest.approx(2.0, abs=0.1)


@pytest.mark.unit
def test_same_seed_same_path(seed: SeedSpec) -> None:
    """Test reproducibility of single-path samplers."""
    grid = TimeGrid.uniform(1.0, 0.25)
    assert np.array_equal(sample_bm(grid, seed).values, sample_bm(grid, seed).values)


@pytest.mark.unit
def test_bridge_pinned_at_both_ends(seed: SeedSpec) -> None:
    """Test that bridges start and end exactly at 0."""
    grid = TimeGrid.uniform(2.5, 0.1)
    bridges, bm = sample_bridge_batch(2.5, grid, seed, 100)
    assert np.all(bridges[:, 0] == 0.0)
    assert np.all(bridges[:, -1] == 0.0)
    assert bm.shape == bridges.shape
    path = sample_bridge(2.5, grid, seed)
    assert path.generator is not None
    assert path.values[-1] == 0.0


@pytest.mark.unit
def test_bridge_variance(seed: SeedSpec) -> None:
    """Test Var b_s = s(u − s)/u at the midpoint."""
    grid = TimeGrid.explicit([1.0, 2.0])
    bridges, _ = sample_bridge_batch(2.0, grid, seed, N_PATHS)
    assert np.var(bridges[:, 1]) == pytest.approx(0.5, abs=0.025)


@pytest.mark.unit
def test_bridge_grid_must_end_at_length(seed: SeedSpec) -> None:
    """Test that a grid not ending at u is rejected."""
    with pytest.raises(ArgumentError):
        sample_bridge_batch(2.0, TimeGrid.uniform(1.0, 0.5), seed, 1)
    with pytest.raises(ArgumentError):
        sample_bridge_batch(0.0, TimeGrid.uniform(1.0, 0.5), seed, 1)


@pytest.mark.unit
def test_bessel_moments(seed: SeedSpec) -> None:
    """Test E[X_1²] = 3 and positivity of Bessel(3) paths."""
    grid = TimeGrid.explicit([1.0])
    values = sample_bessel3_batch(grid, seed, N_PATHS)
    assert np.all(values[:, 1] > 0.0)
    assert np.mean(values[:, 1] ** 2) == pytest.approx(3.0, abs=0.15)
    assert sample_bessel3(grid, seed).values[0] == 0.0


@pytest.mark.unit
def test_path_count_must_be_positive(seed: SeedSpec) -> None:
    """Test that n_paths < 1 is rejected."""
    with pytest.raises(ArgumentError):
        sample_bm_batch(TimeGrid.uniform(1.0, 0.5), seed, 0)
