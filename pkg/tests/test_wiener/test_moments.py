"""
Tests for the moments module.
"""
import math

import numpy as np
import pytest

from penalise.exceptions import ArgumentError
from penalise.funcspace.step import StepFunction
from penalise.measure.tilted import sample_tilted_batch
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.grid import SeedSpec
from penalise.wiener.moments import centered_tail_batch, holder_bounds, holder_increment_moment

# E[(R₁ − E R₁)⁴] for the norm of a standard 3-dimensional Gaussian
CHI3_CENTRAL_FOURTH = 15.0 + 2.0 * (8.0 / math.pi) - 3.0 * (8.0 / math.pi) ** 2


@pytest.mark.unit
def test_holder_bounds() -> None:
    """Test σ² and the candidate bounds for 1_{[0,1)} between v = 0 and 1."""
    bounds = holder_bounds(StepFunction.indicator(0.0, 1.0), 0.0, 1.0)
    assert bounds["sigma2"] == pytest.approx(0.5)
    assert bounds["bound_sigma2"] == pytest.approx(1.5)
    assert bounds["bound_sigma4"] == pytest.approx(0.75)
    assert bounds["bound_time_change"] == pytest.approx(3.0)
    assert bounds["bound"] == pytest.approx(1.5)


@pytest.mark.unit
def test_fourth_moment_under_bessel(seed: SeedSpec) -> None:
    """Test the centred chi(3) fourth moment for the increment over [0, 1)."""
    estimate = holder_increment_moment(StepFunction.indicator(0.0, 1.0), None, 0.0, 2.0, 20000, seed, chunk_size=5000)
    assert estimate.count == 20000
    assert abs(estimate.mean - CHI3_CENTRAL_FOURTH) < 5.0 * estimate.stderr


@pytest.mark.unit
def test_empty_increment_is_zero(seed: SeedSpec) -> None:
    """Test that v₁ = v₂ gives an exactly zero moment."""
    estimate = holder_increment_moment(StepFunction.indicator(0.0, 1.0), None, 1.0, 1.0, 100, seed)
    assert estimate.count == 100
    assert estimate.mean == 0.0


@pytest.mark.unit
def test_invalid_instants(seed: SeedSpec) -> None:
    """Test that v₁ must not exceed v₂."""
    with pytest.raises(ArgumentError):
        holder_increment_moment(StepFunction.indicator(0.0, 1.0), None, 2.0, 1.0, 10, seed)


@pytest.mark.unit
def test_tilted_increment_within_bound(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test the tilted fourth moment against 3·max(σ², σ⁴)."""
    f = StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]])
    estimate = holder_increment_moment(f, tilt, 1.0, 6.0, 4000, seed, chunk_size=1000)
    bound = holder_bounds(f, 1.0, 6.0)["bound"]
    assert math.isfinite(estimate.mean)
    assert estimate.mean <= bound + 5.0 * estimate.stderr


@pytest.mark.unit
def test_centered_tail_vanishes_when_u_passes_support(tilt: TiltingConfig, seed: SeedSpec) -> None:
    """Test J⁽³⁾ = 0 for draws whose last exit is beyond the support."""
    f = StepFunction.indicator(0.0, 0.5)
    batch = sample_tilted_batch(tilt, 16.0, [0.5], seed, 1000)
    values = centered_tail_batch(f, batch)
    late = batch.u >= 0.5
    assert np.any(late)
    assert np.all(values[late] == 0.0)
