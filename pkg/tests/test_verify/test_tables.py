"""
Tests for the tables module.
"""
import pytest

from penalise.exceptions import ArgumentError
from penalise.models.config import SuiteConfig
from penalise.verify.tables import TIME_LEVELS, convergence_table


@pytest.mark.unit
def test_limit_ratio_table(small_suite: SuiteConfig) -> None:
    """Test that the limit-ratio bias shrinks with t."""
    rows = convergence_table("limit_ratio", small_suite)
    assert [row.level for row in rows] == TIME_LEVELS
    assert rows[0].bias_proxy > rows[1].bias_proxy > rows[2].bias_proxy
    assert all(row.stderr == 0.0 for row in rows)


@pytest.mark.statistical
def test_bm_isometry_table(small_suite: SuiteConfig) -> None:
    """Test one row per grid level with a positive standard error."""
    rows = convergence_table("bm_isometry", small_suite, levels=[0.25, 0.125])
    assert [row.level for row in rows] == [0.25, 0.125]
    assert all(row.stderr > 0 for row in rows)
    assert all(row.check_id == "bm_isometry" for row in rows)


@pytest.mark.statistical
def test_arcsine_table(small_suite: SuiteConfig) -> None:
    """Test that P(g_1 <= 1/2) is near 1/2 on a coarse grid."""
    rows = convergence_table("arcsine_law", small_suite, levels=[2.0 ** -5])
    assert abs(rows[0].estimate - 0.5) < 0.08
    assert rows[0].stderr > 0
    assert rows[0].bias_proxy == pytest.approx(abs(rows[0].estimate - 0.5))


@pytest.mark.unit
def test_invalid_table_requests(small_suite: SuiteConfig) -> None:
    """Test unsupported checks and non-positive levels."""
    with pytest.raises(ArgumentError, match="supported"):
        convergence_table("tilted_marginal", small_suite)
    with pytest.raises(ArgumentError):
        convergence_table("limit_ratio", small_suite, levels=[0.0])
