"""
Tests for the gates module.
"""
import math

import pytest

from penalise.models.config import ToleranceSettings
from penalise.verify import gates


@pytest.fixture
def settings() -> ToleranceSettings:
    """Default z-gates of 3 and 5."""
    return ToleranceSettings()


@pytest.mark.unit
@pytest.mark.parametrize("estimate, verdict", [(1.02, "pass"), (1.04, "warn"), (1.06, "fail"), (0.96, "warn")])
def test_equality_gate(settings: ToleranceSettings, estimate: float, verdict: str) -> None:
    """Test the two-sided z-gate."""
    m = gates.equality("x", estimate, 1.0, 0.01, settings)
    assert m.verdict == verdict
    assert m.relation == "equality"
    assert m.z_score == pytest.approx((estimate - 1.0) / 0.01)


@pytest.mark.unit
def test_equality_allowance(settings: ToleranceSettings) -> None:
    """Test that the allowance is subtracted before standardising."""
    m = gates.equality("x", 1.1, 1.0, 0.01, settings, allowance=0.08)
    assert m.z_score == pytest.approx(2.0)
    assert m.verdict == "pass"
    assert gates.equality("x", 1.05, 1.0, 0.01, settings, allowance=0.08).z_score == 0.0


@pytest.mark.unit
def test_equality_without_error_bar(settings: ToleranceSettings) -> None:
    """Test that a deviation with zero stderr fails and an exact match passes."""
    assert gates.equality("x", 1.0, 1.0, 0.0, settings).verdict == "pass"
    assert gates.equality("x", 1.1, 1.0, 0.0, settings).verdict == "fail"
    assert gates.equality("x", math.nan, 1.0, 0.1, settings).verdict == "fail"


@pytest.mark.unit
def test_inequality_gate(settings: ToleranceSettings) -> None:
    """Test the one-sided gate: estimates below the bound always pass."""
    assert gates.inequality("x", 0.5, 1.0, 0.01, settings).verdict == "pass"
    assert gates.inequality("x", 1.02, 1.0, 0.01, settings).verdict == "pass"
    assert gates.inequality("x", 1.045, 1.0, 0.01, settings).verdict == "warn"
    assert gates.inequality("x", 1.1, 1.0, 0.01, settings).verdict == "fail"


@pytest.mark.unit
def test_tolerance_and_holds() -> None:
    """Test the deterministic gates."""
    assert gates.tolerance("x", 1.0 + 1e-13, 1.0, 1e-12).verdict == "pass"
    assert gates.tolerance("x", 1.1, 1.0, 1e-12).verdict == "fail"
    assert gates.tolerance("x", 0.0, 0.0, 0.0).verdict == "pass"
    assert gates.tolerance("x", math.inf, math.inf, 0.0).verdict == "pass"
    assert gates.holds("x", True).verdict == "pass"
    assert gates.holds("x", False).verdict == "fail"


@pytest.mark.unit
def test_critical_gate() -> None:
    """Test pass and warn critical values."""
    assert gates.critical("ks", 1.0, 1.6, 2.8).verdict == "pass"
    assert gates.critical("ks", 2.0, 1.6, 2.8).verdict == "warn"
    assert gates.critical("ks", 3.0, 1.6, 2.8).verdict == "fail"


@pytest.mark.unit
def test_worst(settings: ToleranceSettings) -> None:
    """Test that the most severe verdict, then the largest |z|, is chosen."""
    a = gates.equality("a", 1.01, 1.0, 0.01, settings)
    b = gates.equality("b", 1.025, 1.0, 0.01, settings)
    c = gates.equality("c", 1.045, 1.0, 0.01, settings)
    assert gates.worst([a, b]).quantity == "b"
    assert gates.worst([a, c, b]).quantity == "c"
    assert gates.worst([a, gates.holds("d", False)]).quantity == "d"


@pytest.mark.unit
def test_worst_ignores_inequality_margin(settings: ToleranceSettings) -> None:
    """Test that an inequality held with a wide margin is not the headline."""
    slack = gates.inequality("slack", 0.0, 1.0, 0.01, settings)
    close = gates.equality("close", 1.01, 1.0, 0.01, settings)
    assert slack.verdict == close.verdict == "pass"
    assert slack.z_score == pytest.approx(-100.0)
    assert gates.worst([slack, close]).quantity == "close"
    tight = gates.inequality("tight", 1.02, 1.0, 0.01, settings)
    assert gates.worst([slack, close, tight]).quantity == "tight"
