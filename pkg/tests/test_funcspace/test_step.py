"""
Tests for the step module.
"""
import numpy as np
import pytest

from penalise.exceptions import ArgumentError, StepFunctionParseError
from penalise.funcspace.step import StepFunction


@pytest.mark.unit
def test_from_pairs_levels_and_breakpoints() -> None:
    """Test that pair (t_k, c_k) gives the value c_k on [t_{k-1}, t_k)."""
    f = StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]])
    assert f.breakpoints.tolist() == [0.0, 1.0, 3.0]
    assert f.levels.tolist() == [2.0, -1.0]
    assert f.evaluate(np.array([0.0, 0.999, 1.0, 2.5, 3.0, 10.0])).tolist() == [2.0, 2.0, -1.0, -1.0, 0.0, 0.0]
    assert f.to_pairs() == [[1.0, 2.0], [3.0, -1.0]]


@pytest.mark.unit
def test_norms_and_integrals() -> None:
    """Test exact L², Lebesgue and s^{-1/2}-weighted integrals."""
    f = StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]])
    assert f.l2_norm_squared() == 8.0
    assert f.integral() == 0.0
    assert f.sqrt_weighted_integral() == pytest.approx(4.0 - 2.0 * (np.sqrt(3.0) - 1.0))
    assert f.sup_norm() == 2.0


@pytest.mark.unit
def test_zero_function() -> None:
    """Test the zero step function."""
    zero = StepFunction.zero()
    assert zero.n == 0
    assert zero.breakpoints.tolist() == [0.0]
    assert zero.evaluate(np.array([0.5])).tolist() == [0.0]
    assert zero.l2_norm() == 0.0


@pytest.mark.unit
def test_invalid_construction() -> None:
    """Test that malformed breakpoints are rejected."""
    with pytest.raises(ArgumentError):
        StepFunction(np.array([0.0, 2.0, 1.0]), np.array([1.0, 1.0]))
    with pytest.raises(ArgumentError):
        StepFunction(np.array([1.0, 2.0]), np.array([1.0]))
    with pytest.raises(ArgumentError):
        StepFunction(np.array([0.0, 1.0]), np.array([1.0, 2.0]))
    with pytest.raises(ArgumentError):
        StepFunction.from_pairs([[1.0, np.inf]])


@pytest.mark.unit
def test_equality_uses_canonical_form() -> None:
    """Test that merged cells and trailing zeros do not affect equality."""
    assert StepFunction.from_pairs([[1.0, 1.0], [2.0, 1.0]]) == StepFunction.from_pairs([[2.0, 1.0]])
    assert StepFunction.from_pairs([[1.0, 1.0], [2.0, 0.0]]) == StepFunction.indicator(0.0, 1.0)
    assert hash(StepFunction.from_pairs([[1.0, 1.0], [2.0, 1.0]])) == hash(StepFunction.indicator(0.0, 2.0))
    assert StepFunction.indicator(0.0, 1.0) != StepFunction.indicator(0.0, 2.0)


@pytest.mark.unit
def test_arithmetic() -> None:
    """Test sums, differences and scalar multiples."""
    f = StepFunction.indicator(0.0, 2.0)
    g = StepFunction.indicator(1.0, 3.0, level=2.0)
    assert f + g == StepFunction.from_pairs([[1.0, 1.0], [2.0, 3.0], [3.0, 2.0]])
    assert (f - f).canonical().n == 0
    assert 3.0 * f == StepFunction.indicator(0.0, 2.0, level=3.0)
    assert -f == f * -1.0


@pytest.mark.unit
def test_refine_and_restrict() -> None:
    """Test that refinement keeps the function and restriction zeroes outside [a, b)."""
    f = StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]])
    refined = f.refine([0.5, 2.0])
    assert refined.breakpoints.tolist() == [0.0, 0.5, 1.0, 2.0, 3.0]
    assert refined == f
    restricted = f.restrict(0.5, 2.0)
    assert restricted.breakpoints.tolist() == [0.0, 0.5, 1.0, 2.0]
    assert restricted.levels.tolist() == [0.0, 2.0, -1.0]
    assert f.restrict(1.0, 1.0).n == 0


@pytest.mark.unit
def test_as_integrand() -> None:
    """Test the Integrand1D view of a step function."""
    integrand = StepFunction.from_pairs([[1.0, 2.0], [3.0, -1.0]]).as_integrand()
    assert integrand.support_end == 3.0
    assert integrand.breakpoints == (1.0, 3.0)
    assert integrand(np.array([0.5, 2.0])).tolist() == [2.0, -1.0]


@pytest.mark.unit
def test_from_json() -> None:
    """Test parsing of JSON pairs."""
    f = StepFunction.from_json("[[0.5, 1], [2, -3.5]]")
    assert f == StepFunction.from_pairs([[0.5, 1.0], [2.0, -3.5]])


@pytest.mark.unit
def test_from_json_malformed() -> None:
    """Test that malformed JSON names its position."""
    with pytest.raises(StepFunctionParseError, match="line 1"):
        StepFunction.from_json("[[1, 2]")


@pytest.mark.unit
@pytest.mark.parametrize(
    "text, fragment",
    [
        ('{"t": 1}', "JSON array"),
        ("[[1, 2], [0.5, 1]]", "index 1"),
        ("[[1, 2, 3]]", "index 0"),
        ('[[1, "a"]]', "index 0"),
        ("[[0, 1]]", "index 0"),
        ("[[1, true]]", "index 0"),
    ],
)
def test_from_json_invalid_pairs(text: str, fragment: str) -> None:
    """Test that invalid pairs are reported by index."""
    with pytest.raises(StepFunctionParseError, match=fragment):
        StepFunction.from_json(text)
