"""
Tests for the grid module.
"""
import numpy as np
import pytest

from penalise.exceptions import ArgumentError
from penalise.paths.grid import SamplePath, SeedSpec, TimeGrid


@pytest.mark.unit
def test_uniform_grid() -> None:
    """Test nodes k·Δ with the horizon appended when off the lattice."""
    grid = TimeGrid.uniform(1.0, 0.25)
    assert grid.times.tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert grid.resolution == 0.25
    odd = TimeGrid.uniform(1.1, 0.25)
    assert odd.times[-1] == 1.1
    assert len(odd) == 6


@pytest.mark.unit
def test_uniform_grid_snaps_horizon() -> None:
    """Test that a horizon within rounding of a node replaces it."""
    grid = TimeGrid.uniform(0.3, 0.1)
    assert len(grid) == 4
    assert grid.span == 0.3


@pytest.mark.unit
def test_invalid_grids() -> None:
    """Test rejection of empty, unordered and offset grids."""
    with pytest.raises(ArgumentError):
        TimeGrid(np.array([]))
    with pytest.raises(ArgumentError):
        TimeGrid(np.array([0.0, 1.0, 1.0]))
    with pytest.raises(ArgumentError):
        TimeGrid(np.array([0.5, 1.0]))
    with pytest.raises(ArgumentError):
        TimeGrid.uniform(1.0, 0.0)


@pytest.mark.unit
def test_explicit_grid_prepends_zero() -> None:
    """Test that explicit grids are sorted, deduplicated and start at 0."""
    grid = TimeGrid.explicit([2.0, 0.5, 2.0])
    assert grid.times.tolist() == [0.0, 0.5, 2.0]
    assert grid.resolution is None


@pytest.mark.unit
def test_index_of_and_with_node() -> None:
    """Test node lookup and insertion."""
    grid = TimeGrid.uniform(1.0, 0.25)
    assert grid.index_of(0.5) == 2
    assert grid.index_of(0.5 + 1e-14) == 2
    with pytest.raises(ArgumentError):
        grid.index_of(0.6)
    inserted = grid.with_node(0.6)
    assert inserted.index_of(0.6) == 3
    assert len(inserted) == 6
    assert len(grid.with_node(0.5 + 1e-14)) == 5
    assert grid.with_node(0.0) is grid
    near_zero = grid.with_node(5e-13)
    assert near_zero.times[1] == 5e-13
    assert near_zero.index_of(5e-13) == 1
    assert near_zero.index_of(0.0) == 0


@pytest.mark.unit
def test_seed_streams_are_reproducible() -> None:
    """Test that equal seed specs give equal draws and children differ."""
    seed = SeedSpec(root_seed=7, stream_index=3)
    a = seed.generator().standard_normal(5)
    b = SeedSpec(root_seed=7, stream_index=3).generator().standard_normal(5)
    c = seed.child(1).generator().standard_normal(5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert seed.child(2).stream_index == 5


@pytest.mark.unit
def test_sample_path_interpolation() -> None:
    """Test piecewise-linear reading of a path."""
    path = SamplePath(TimeGrid.explicit([1.0, 2.0]), np.array([0.0, 2.0, -2.0]))
    assert path.value_at(0.5) == pytest.approx(1.0)
    assert path.value_at(1.5) == pytest.approx(0.0)
    with pytest.raises(ArgumentError):
        SamplePath(TimeGrid.explicit([1.0]), np.array([0.0]))
