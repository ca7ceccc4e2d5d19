"""
Tests for the verification suite workflows.
"""
import csv
import json
import os

import pytest

from penalise.models.config import RunConfig
from penalise.workflows.suite import run_suite, table_flow, verify_flow

ANALYTIC_CHECKS = ["limit_ratio", "quadrature_calibration"]


@pytest.mark.integration
def test_run_suite_keeps_registry_order(prefect_harness: None, run_config: RunConfig) -> None:
    """Test that results come back in registry order whatever the request order."""
    results = run_suite(run_config.suite, ["quadrature_calibration", "limit_ratio"])
    assert [r.check_id for r in results] == ANALYTIC_CHECKS
    assert all(r.verdict == "pass" for r in results)


@pytest.mark.integration
def test_verify_flow_writes_reports(prefect_harness: None, run_config: RunConfig) -> None:
    """Test report.json, report.csv and resolved_config.json of a verify run."""
    run = run_config.model_copy(update={"checks": ANALYTIC_CHECKS})
    report = verify_flow(run)
    assert report.exit_code == 0
    assert [r.check_id for r in report.results] == ANALYTIC_CHECKS

    with open(os.path.join(run.out, "report.json")) as f:
        data = json.load(f)
    assert data["exit_code"] == 0
    assert data["header"]["config"]["seed"] == run.suite.seed
    with open(os.path.join(run.out, "report.csv"), newline="") as f:
        rows = list(csv.DictReader(f))
    assert {row["check_id"] for row in rows} == set(ANALYTIC_CHECKS)
    assert all(row["verdict"] == "pass" for row in rows)
    with open(os.path.join(run.out, "resolved_config.json")) as f:
        assert json.load(f)["checks"] == ANALYTIC_CHECKS


@pytest.mark.integration
def test_verify_flow_is_reproducible(prefect_harness: None, run_config: RunConfig, temp_dir: str) -> None:
    """Test that two runs with the same seed write identical report.csv files."""
    first = run_config.model_copy(update={"checks": ["limit_ratio"], "out": os.path.join(temp_dir, "a")})
    second = first.model_copy(update={"out": os.path.join(temp_dir, "b")})
    verify_flow(first)
    verify_flow(second)
    with open(os.path.join(first.out, "report.csv")) as a, open(os.path.join(second.out, "report.csv")) as b:
        assert a.read() == b.read()


@pytest.mark.integration
def test_table_flow(prefect_harness: None, run_config: RunConfig) -> None:
    """Test table.csv for the limit-ratio refinement."""
    run = run_config.model_copy(update={"subcommand": "table", "checks": ["limit_ratio"], "levels": [25.0, 400.0]})
    rows = table_flow(run)
    assert [row.level for row in rows] == [25.0, 400.0]
    with open(os.path.join(run.out, "table.csv"), newline="") as f:
        lines = list(csv.reader(f))
    assert len(lines) == 3
    assert lines[1][0] == "limit_ratio"


@pytest.mark.integration
def test_table_flow_needs_one_check(prefect_harness: None, run_config: RunConfig) -> None:
    """Test that table refuses a missing check."""
    with pytest.raises(ValueError):
        table_flow(run_config.model_copy(update={"subcommand": "table", "checks": None}))
