"""
Tests for the expectation module.
"""
import math

import numpy as np
import pytest

from penalise.exceptions import ArgumentError, DegenerateWeightError, NonFiniteFunctionalError
from penalise.measure.expectation import chunk_sizes, w_expectation, w_value, wG_probability
from penalise.measure.tilted import TiltedBatch
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.grid import SeedSpec


@pytest.mark.unit
def test_chunk_sizes() -> None:
    """Test the split of paths into chunks."""
    assert chunk_sizes(10, 4) == [4, 4, 2]
    assert chunk_sizes(8, 4) == [4, 4]
    with pytest.raises(ArgumentError):
        chunk_sizes(0, 4)


@pytest.mark.unit
def test_constant_functional_gives_w_mass(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test that 𝒲[φ(g)] = C_φ/√(2π) exactly for F = 1."""
    estimate = w_expectation(lambda batch: np.ones(batch.n_paths), tilt, 1000, seed, chunk_size=300)
    assert estimate.count == 1000
    value, stderr = w_value(estimate, tilt)
    assert value == pytest.approx(1.0 / math.sqrt(2.0))
    assert stderr == 0.0


@pytest.mark.unit
def test_result_is_reproducible(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test that equal arguments give equal estimates."""
    def u(batch: TiltedBatch) -> np.ndarray:
        return batch.u

    first = w_expectation(u, tilt, 2000, seed, chunk_size=512)
    second = w_expectation(u, tilt, 2000, seed, chunk_size=512)
    assert first == second
    assert first.mean == pytest.approx(0.5, abs=5.0 * first.stderr)


@pytest.mark.unit
def test_non_finite_functional_aborts(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test that a functional that is mostly infinite is rejected."""
    with pytest.raises(NonFiniteFunctionalError):
        w_expectation(lambda batch: np.full(batch.n_paths, np.inf), tilt, 100, seed)


@pytest.mark.unit
def test_wG_probability_of_sure_event(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test that the sure event has 𝒲^G-probability 1."""
    ratio = wG_probability(
        lambda batch: np.ones(batch.n_paths),
        lambda batch: np.exp(-batch.u),
        tilt, 1000, seed,
    )
    assert ratio.mean == pytest.approx(1.0)


@pytest.mark.unit
def test_wG_probability_sign_event(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test 𝒲^G(X_2 > 0) = 1/2 for G = e^{-g}."""
    ratio = wG_probability(
        lambda batch: batch.full[:, 1] > 0.0,
        lambda batch: np.exp(-batch.u),
        tilt, 4000, seed, query_times=(2.0,),
    )
    assert abs(ratio.mean - 0.5) < 5.0 * ratio.stderr


@pytest.mark.unit
def test_degenerate_weight(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test that G = 0 is reported as degenerate."""
    with pytest.raises(DegenerateWeightError):
        wG_probability(
            lambda batch: np.ones(batch.n_paths),
            lambda batch: np.zeros(batch.n_paths),
            tilt, 100, seed,
        )
