"""
Tests for the approximation module.
"""
import numpy as np
import pytest

from penalise.exceptions import ArgumentError, NotApproximableError
from penalise.funcspace.approximation import approximate
from penalise.funcspace.step import StepFunction
from penalise.numerics.integrand import Integrand1D
from penalise.verify.corpus import counterexample, step_corpus


@pytest.mark.unit
def test_dyadic_step_functions_reproduced() -> None:
    """Test that dyadic-aligned step functions are their own approximants."""
    for f in step_corpus():
        assert approximate(f.as_integrand(), 2) == f


@pytest.mark.unit
def test_cell_averages() -> None:
    """Test averaging across a non-dyadic breakpoint."""
    approximant = approximate(Integrand1D.indicator(0.0, 1.0 / 3.0), 2)
    assert approximant.breakpoints.tolist() == [0.0, 0.25, 0.5]
    assert approximant.levels == pytest.approx([1.0, 1.0 / 3.0])


@pytest.mark.unit
def test_reach_is_two_to_the_level() -> None:
    """Test that cells cover [0, 2^L) for unbounded support."""
    approximant = approximate(Integrand1D(evaluator=lambda s: np.exp(-s), name="exp"), 3)
    assert approximant.support_end == 8.0
    assert approximant.n == 64


@pytest.mark.unit
def test_l2_error_decreases() -> None:
    """Test that the L² error of the approximants shrinks with the level."""
    f = Integrand1D(evaluator=lambda s: np.exp(-s), name="exp")
    s = np.linspace(0.0, 8.0, 80001)[:-1]
    errors = [np.mean((approximate(f, level).evaluate(s) - np.exp(-s)) ** 2) for level in (1, 2, 3)]
    assert errors[0] > errors[1] > errors[2]


@pytest.mark.unit
def test_invalid_level() -> None:
    """Test that the level must be a positive integer."""
    f = StepFunction.indicator(0.0, 1.0).as_integrand()
    with pytest.raises(ArgumentError):
        approximate(f, 0)
    with pytest.raises(ArgumentError):
        approximate(f, True)
    with pytest.raises(ArgumentError):
        approximate(f, 1.5)


@pytest.mark.unit
def test_counterexample_not_approximable() -> None:
    """Test that 1/(√s log s) is rejected as outside L¹(ds/(1+√s))."""
    with pytest.raises(NotApproximableError):
        approximate(counterexample(), 3)


@pytest.mark.unit
def test_membership_check_can_be_skipped() -> None:
    """Test approximation of the counterexample on its first cells."""
    approximant = approximate(counterexample(), 2, check_membership=False)
    assert approximant.support_end == 4.0
    assert approximant.evaluate(np.array([1.0]))[0] == 0.0
