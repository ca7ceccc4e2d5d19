"""
Tests for the estimate module.
"""
import math

import numpy as np
import pytest
from scipy import stats

from penalise.models.estimate import Estimate, RatioEstimate


@pytest.fixture
def samples() -> np.ndarray:
    """Skewed samples."""
    return np.random.default_rng(3).exponential(size=1001)


@pytest.mark.unit
def test_from_samples_moments(samples: np.ndarray) -> None:
    """Test mean, variance and standard error of a batch."""
    estimate = Estimate.from_samples(samples)
    assert estimate.count == 1001
    assert estimate.mean == pytest.approx(np.mean(samples))
    assert estimate.variance == pytest.approx(np.var(samples, ddof=1))
    assert estimate.stderr == pytest.approx(np.std(samples, ddof=1) / math.sqrt(1001))
    assert estimate.excess_kurtosis == pytest.approx(stats.kurtosis(samples, fisher=True, bias=True))


@pytest.mark.unit
def test_merge_equals_concatenation(samples: np.ndarray) -> None:
    """Test that merging chunk Estimates reproduces the whole-batch Estimate."""
    whole = Estimate.from_samples(samples)
    merged = Estimate()
    for chunk in np.array_split(samples, [10, 400, 401]):
        merged = merged.merge(Estimate.from_samples(chunk))
    assert merged.count == whole.count
    assert merged.mean == pytest.approx(whole.mean, rel=1e-12)
    assert merged.m2 == pytest.approx(whole.m2, rel=1e-10)
    assert merged.m3 == pytest.approx(whole.m3, rel=1e-9)
    assert merged.m4 == pytest.approx(whole.m4, rel=1e-9)


@pytest.mark.unit
def test_non_finite_samples_dropped() -> None:
    """Test that NaN and infinities are counted and excluded."""
    estimate = Estimate.from_samples([1.0, np.nan, 3.0, np.inf])
    assert estimate.count == 2
    assert estimate.mean == 2.0
    assert estimate.non_finite == 2
    assert estimate.non_finite_fraction == 0.5
    empty = Estimate.from_samples([np.nan])
    assert empty.count == 0
    assert math.isnan(empty.stderr)
    assert empty.merge(estimate).non_finite == 3


@pytest.mark.unit
def test_ratio_estimate(samples: np.ndarray) -> None:
    """Test the ratio and its delta-method standard error against chunked merging."""
    weights = 1.0 + samples
    events = (samples > 1.0) * weights
    whole = RatioEstimate.from_samples(events, weights)
    merged = RatioEstimate()
    for a, b in zip(np.array_split(events, 4), np.array_split(weights, 4)):
        merged = merged.merge(RatioEstimate.from_samples(a, b))
    assert whole.mean == pytest.approx(np.sum(events) / np.sum(weights))
    assert merged.mean == pytest.approx(whole.mean, rel=1e-12)
    assert merged.stderr == pytest.approx(whole.stderr, rel=1e-9)
    assert 0.0 < whole.stderr < 0.05


@pytest.mark.unit
def test_ratio_of_proportional_samples_has_no_error() -> None:
    """Test that A = cB gives ratio c with zero standard error."""
    b = np.array([1.0, 2.0, 5.0, 7.0])
    ratio = RatioEstimate.from_samples(3.0 * b, b)
    assert ratio.mean == pytest.approx(3.0)
    assert ratio.stderr == pytest.approx(0.0, abs=1e-12)
    assert math.isnan(RatioEstimate.from_samples([1.0], [0.0]).mean)
