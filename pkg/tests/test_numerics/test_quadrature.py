"""
Tests for the quadrature module.
"""
import math

import numpy as np
import pytest

from penalise.exceptions import ArgumentError, IntegrandNotFiniteError
from penalise.numerics.integrand import Integrand1D
from penalise.numerics.quadrature import integrate_half_line, integrate_singular, integrate_to_infinity


@pytest.mark.unit
def test_inverse_square_root_at_left_end() -> None:
    """Test ∫₀¹ u^{-1/2} du = 2 with a singular left end."""
    value = integrate_singular(lambda u: 1.0 / np.sqrt(u), 0.0, 1.0, singular_left=True)
    assert value == pytest.approx(2.0, rel=1e-10)


@pytest.mark.unit
def test_arcsine_density_integrates_to_pi() -> None:
    """Test ∫₀¹ du/√(u(1−u)) = π with both ends singular."""
    value = integrate_singular(
        lambda u: 1.0 / np.sqrt(u * (1.0 - u)), 0.0, 1.0, singular_left=True, singular_right=True
    )
    assert value == pytest.approx(math.pi, rel=1e-10)


@pytest.mark.unit
def test_breakpoints_split_discontinuities() -> None:
    """Test that a jump at a declared breakpoint is integrated exactly."""
    f = Integrand1D.indicator(0.0, 1.0 / 3.0, level=2.0)
    assert integrate_singular(f, 0.0, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-12)


@pytest.mark.unit
def test_limits_are_validated() -> None:
    """Test that reversed or infinite limits are rejected."""
    with pytest.raises(ArgumentError):
        integrate_singular(np.cos, 1.0, 0.0)
    with pytest.raises(ArgumentError):
        integrate_singular(np.cos, 0.0, math.inf)
    with pytest.raises(ArgumentError):
        integrate_to_infinity(np.cos, -1.0)


@pytest.mark.unit
def test_interior_non_finite_value_raises() -> None:
    """Test that an unflagged singularity inside the range is reported."""
    with pytest.raises(IntegrandNotFiniteError):
        integrate_singular(lambda u: np.where(u > 0.3, np.inf, 1.0), 0.0, 1.0)


@pytest.mark.unit
def test_gamma_half_on_half_line() -> None:
    """Test ∫₀^∞ e^{-u}u^{-1/2} du = √π."""
    value = integrate_to_infinity(lambda u: np.exp(-u) / np.sqrt(u), 0.0, singular_left=True)
    assert value == pytest.approx(math.sqrt(math.pi), rel=1e-9)


@pytest.mark.unit
def test_power_tail_converges() -> None:
    """Test ∫₀^∞ (1+u)^{-2} du = 1."""
    assert integrate_to_infinity(lambda u: (1.0 + u) ** -2) == pytest.approx(1.0, rel=1e-8)


@pytest.mark.unit
def test_harmonic_tail_diverges() -> None:
    """Test that ∫₁^∞ du/u is reported as +∞."""
    assert integrate_to_infinity(lambda u: 1.0 / u, 1.0) == math.inf


@pytest.mark.unit
def test_support_hint_bounds_the_range() -> None:
    """Test that a compactly supported integrand is integrated on its support only."""
    f = Integrand1D.indicator(2.0, 5.0)
    assert integrate_to_infinity(f) == pytest.approx(3.0, rel=1e-12)
    assert integrate_to_infinity(f, 6.0) == 0.0


@pytest.mark.unit
def test_late_support_without_hint() -> None:
    """Test that an integrand living far from the origin is found without a support_hint."""
    def bump(u: np.ndarray) -> np.ndarray:
        x = (u - 1000.0) / 200.0
        return np.where(np.abs(x) < 1.0, (1.0 - x ** 2) ** 2, 0.0)

    assert integrate_to_infinity(bump) == pytest.approx(200.0 * 16.0 / 15.0, rel=1e-8)
    assert integrate_to_infinity(lambda u: np.zeros_like(u)) == 0.0


@pytest.mark.unit
def test_half_line_split() -> None:
    """Test that the split point does not change the value."""
    g = lambda u: np.exp(-u) / np.sqrt(u)  # noqa: E731
    assert integrate_half_line(g) == pytest.approx(integrate_half_line(g, split=3.0), rel=1e-9)
