"""
Tests for the step-function operations module.
"""
import pytest

from penalise.exceptions import ArgumentError
from penalise.funcspace.operations import project_bridge, shift, truncate
from penalise.funcspace.step import StepFunction


@pytest.fixture
def f() -> StepFunction:
    """2 on [0, 1), −1 on [1, 3)."""
    return StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]])


@pytest.mark.unit
def test_shift(f: StepFunction) -> None:
    """Test s ↦ f(s + u)."""
    shifted = shift(f, 0.5)
    assert shifted.breakpoints.tolist() == [0.0, 0.5, 2.5]
    assert shifted.levels.tolist() == [2.0, -1.0]
    assert shift(f, 0.0) is f
    assert shift(f, 3.0).n == 0
    with pytest.raises(ArgumentError):
        shift(f, -1.0)


@pytest.mark.unit
def test_truncate(f: StepFunction) -> None:
    """Test f·1_{[0,t)}."""
    assert truncate(f, 2.0) == StepFunction.from_pairs([[1.0, 2.0], [2.0, -1.0]])
    assert truncate(f, 5.0) is f
    assert truncate(f, 0.0).canonical().n == 0
    with pytest.raises(ArgumentError):
        truncate(f, -0.1)


@pytest.mark.unit
def test_project_bridge(f: StepFunction) -> None:
    """Test that π_u f has mean zero on [0, u) and the reduced norm."""
    projected = project_bridge(f, 2.0)
    assert projected.levels.tolist() == [1.5, -1.5]
    assert projected.integral() == pytest.approx(0.0)
    assert projected.l2_norm_squared() == pytest.approx(truncate(f, 2.0).l2_norm_squared() - 0.5)


@pytest.mark.unit
def test_project_bridge_beyond_support() -> None:
    """Test that the window is padded with zeros up to u."""
    projected = project_bridge(StepFunction.indicator(0.0, 0.5), 1.0)
    assert projected.breakpoints.tolist() == [0.0, 0.5, 1.0]
    assert projected.levels.tolist() == [0.5, -0.5]
    assert projected.l2_norm_squared() == pytest.approx(0.25)
    with pytest.raises(ArgumentError):
        project_bridge(StepFunction.indicator(0.0, 0.5), 0.0)
