"""
Tests for the simulation workflows.
"""
import csv
import os

import pytest

from penalise.models.config import RunConfig
from penalise.tasks.simulation import SIMULATION_BLOCK
from penalise.workflows.simulation import INTEGRAL_COLUMNS, SAMPLE_COLUMNS, integrate_flow, simulate_flow


@pytest.fixture
def small_run(run_config: RunConfig) -> RunConfig:
    """Six paths in chunks of four on a coarse grid."""
    suite = run_config.suite.model_copy(update={"n_paths": 6, "chunk_size": 4, "dt": 2.0 ** -4})
    return run_config.model_copy(update={"suite": suite})


def _read(file_path: str) -> list:
    with open(file_path, newline="") as f:
        return list(csv.DictReader(f))


@pytest.mark.integration
def test_simulate_flow(prefect_harness: None, small_run: RunConfig) -> None:
    """Test samples.csv and the dumped paths."""
    run = small_run.model_copy(update={"subcommand": "simulate", "dump_paths": 2})
    written = simulate_flow(run)
    rows = _read(written["samples"])
    assert list(rows[0]) == SAMPLE_COLUMNS
    assert [int(row["path"]) for row in rows] == list(range(6))
    for row in rows:
        assert float(row["g_check"]) == pytest.approx(float(row["u"]))
        assert row["sign"] in ("1", "-1")
    assert len(written["paths"]) == 2
    dumped = _read(os.path.join(run.out, "paths", "path_1.csv"))
    at_u = [row for row in dumped if float(row["time"]) == float(rows[1]["u"])]
    assert len(at_u) == 1 and float(at_u[0]["value"]) == 0.0
    assert float(dumped[-1]["time"]) == run.suite.horizon
    assert os.path.exists(os.path.join(run.out, "resolved_config.json"))


@pytest.mark.integration
def test_simulate_flow_is_reproducible(prefect_harness: None, small_run: RunConfig, temp_dir: str) -> None:
    """Test that path i does not depend on the chunking."""
    first = small_run.model_copy(update={"subcommand": "simulate", "out": os.path.join(temp_dir, "a")})
    rechunked = first.suite.model_copy(update={"chunk_size": 5})
    second = first.model_copy(update={"suite": rechunked, "out": os.path.join(temp_dir, "b")})
    a = _read(simulate_flow(first)["samples"])
    b = _read(simulate_flow(second)["samples"])
    assert a == b


@pytest.mark.integration
def test_simulate_flow_across_blocks(prefect_harness: None, small_run: RunConfig, temp_dir: str) -> None:
    """Test that chunks cutting through stream blocks give the same samples."""
    suite = small_run.suite.model_copy(update={"n_paths": SIMULATION_BLOCK + 9, "chunk_size": 7})
    first = small_run.model_copy(update={"subcommand": "simulate", "suite": suite, "out": os.path.join(temp_dir, "a")})
    whole = suite.model_copy(update={"chunk_size": SIMULATION_BLOCK + 9})
    second = first.model_copy(update={"suite": whole, "out": os.path.join(temp_dir, "b")})
    a = _read(simulate_flow(first)["samples"])
    b = _read(simulate_flow(second)["samples"])
    assert a == b
    assert [int(row["path"]) for row in a] == list(range(SIMULATION_BLOCK + 9))
    assert len({row["u"] for row in a}) == len(a)


@pytest.mark.integration
def test_integrate_flow(prefect_harness: None, small_run: RunConfig) -> None:
    """Test integrals.csv and trajectory.csv of a two-level step function."""
    run = small_run.model_copy(
        update={"subcommand": "integrate", "integrand": [(1.0, 2.0), (3.0, -1.0)], "t_grid": [0.5, 3.0]}
    )
    written = integrate_flow(run)
    rows = _read(written["integrals"])
    assert list(rows[0]) == INTEGRAL_COLUMNS
    assert len(rows) == 6
    assert written["max_residual"] < 1e-12
    for row in rows:
        assert float(row["whole"]) == pytest.approx(float(row["j1"]) + float(row["j2"]), abs=1e-12)
    trajectory = _read(written["trajectory"])
    assert len(trajectory) == 12
    at_end = {row["path"]: float(row["I_t"]) for row in trajectory if float(row["t"]) == 3.0}
    for row in rows:
        assert at_end[row["path"]] == pytest.approx(float(row["whole"]), abs=1e-12)


@pytest.mark.integration
def test_integrate_flow_without_trajectory(prefect_harness: None, small_run: RunConfig) -> None:
    """Test that no trajectory.csv is written without a t-grid."""
    run = small_run.model_copy(update={"subcommand": "integrate", "integrand": [(0.5, 1.0)]})
    written = integrate_flow(run)
    assert "trajectory" not in written
    assert not os.path.exists(os.path.join(run.out, "trajectory.csv"))
