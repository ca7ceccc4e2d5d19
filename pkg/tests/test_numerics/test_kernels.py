"""
Tests for the kernels module.
"""
import math

import numpy as np
import pytest

from penalise.exceptions import ArgumentError
from penalise.numerics.kernels import (
    arcsine_kernel,
    arcsine_kernel_exponential,
    arcsine_kernel_values,
    last_exit_expectation,
    limit_ratio,
)
from penalise.numerics.tilting import TiltingConfig, default_tilt


@pytest.mark.unit
@pytest.mark.parametrize("s", [0.01, 0.5, 1.0, 7.0, 60.0])
def test_exponential_kernel_closed_form(s: float) -> None:
    """Test quadrature against π e^{-s/2} I₀(s/2)."""
    expected = float(arcsine_kernel_exponential(1.0, s))
    assert arcsine_kernel(default_tilt(), s) == pytest.approx(expected, rel=1e-8)


@pytest.mark.unit
def test_indicator_kernel() -> None:
    """Test K(s) = π for s ≤ c and 2 arcsin √(c/s) beyond."""
    tilt = TiltingConfig.indicator(1.0)
    assert arcsine_kernel(tilt, 0.5) == pytest.approx(math.pi, rel=1e-9)
    assert arcsine_kernel(tilt, 4.0) == pytest.approx(2.0 * math.asin(0.5), rel=1e-9)


@pytest.mark.unit
def test_kernel_bounded_by_pi_phi_zero() -> None:
    """Test K_φ(s) ≤ πφ(0+)."""
    values = arcsine_kernel_values(default_tilt(), np.array([1e-4, 0.1, 1.0, 10.0]))
    assert np.all(values <= math.pi * (1.0 + 1e-12))
    assert np.all(np.diff(values) < 0)


@pytest.mark.unit
def test_kernel_requires_positive_time() -> None:
    """Test that s ≤ 0 is rejected."""
    with pytest.raises(ArgumentError):
        arcsine_kernel(default_tilt(), 0.0)
    with pytest.raises(ArgumentError):
        limit_ratio(default_tilt(), -1.0)


@pytest.mark.unit
def test_limit_ratio_approaches_c_phi() -> None:
    """Test that √t K_φ(t) is within a few parts per thousand of C_φ at t = 400."""
    tilt = default_tilt()
    assert abs(limit_ratio(tilt, 400.0) - tilt.c_phi) < 5e-3
    assert abs(limit_ratio(tilt, 400.0) - tilt.c_phi) < abs(limit_ratio(tilt, 25.0) - tilt.c_phi)


@pytest.mark.unit
def test_last_exit_expectation_small_time() -> None:
    """Test that W[φ(g_t)] tends to φ(0+) as t → 0."""
    assert last_exit_expectation(default_tilt(), 1e-6) == pytest.approx(1.0, abs=1e-5)
