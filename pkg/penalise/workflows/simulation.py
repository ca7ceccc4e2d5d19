"""
Simulation and integration workflows.
"""
import os
from typing import Any, Dict, List

from prefect import flow, get_run_logger

from penalise.funcspace.step import StepFunction
from penalise.measure.expectation import chunk_sizes
from penalise.models.config import RunConfig
from penalise.tasks.output import ensure_output_dir_task, write_rows_csv_task
from penalise.tasks.simulation import dump_path_task, integrate_chunk_task, simulate_chunk_task
from penalise.verify.report import write_resolved_config

SAMPLE_COLUMNS = ["path", "u", "sign", "g_check"]
INTEGRAL_COLUMNS = ["path", "u", "sign", "whole", "j1", "j2", "residual"]
TRAJECTORY_COLUMNS = ["path", "t", "I_t"]


@flow(name="Simulate Tilted Paths")
def simulate_flow(run: RunConfig) -> Dict[str, Any]:
    """
    Write samples.csv (u, sign, g_check per path) and optional full-path CSVs.

    Args:
        run: Resolved run configuration

    Returns:
        Dictionary with the written files
    """
    logger = get_run_logger()
    config = run.suite
    out_dir = ensure_output_dir_task(run.out)
    write_resolved_config(run, out_dir)

    futures = []
    start = 0
    for size in chunk_sizes(config.n_paths, config.chunk_size):
        futures.append(simulate_chunk_task.submit(config, start, size))
        start += size
    rows: List[Dict[str, Any]] = []
    for future in futures:
        rows.extend(future.result())
    samples = write_rows_csv_task(rows, SAMPLE_COLUMNS, os.path.join(out_dir, "samples.csv"))
    logger.info(f"Wrote {len(rows)} tilted samples to {samples}")

    dumped = [dump_path_task(config, index, out_dir) for index in range(min(run.dump_paths, config.n_paths))]
    if dumped:
        logger.info(f"Dumped {len(dumped)} full paths")
    return {"samples": samples, "paths": dumped}


@flow(name="Integrate Step Function")
def integrate_flow(run: RunConfig) -> Dict[str, Any]:
    """
    Write integrals.csv (whole, j1, j2, residual per path) and trajectory.csv.

    Args:
        run: Resolved run configuration carrying the integrand and t-grid

    Returns:
        Dictionary with the written files and the largest residual
    """
    logger = get_run_logger()
    config = run.suite
    f = StepFunction.from_pairs(run.integrand)
    out_dir = ensure_output_dir_task(run.out)
    write_resolved_config(run, out_dir)
    logger.info(f"Integrating {f!r} over {config.n_paths} tilted paths")

    futures = []
    start = 0
    for i, size in enumerate(chunk_sizes(config.n_paths, config.chunk_size)):
        futures.append(integrate_chunk_task.submit(config, f, run.t_grid, i, start, size))
        start += size
    rows: List[Dict[str, Any]] = []
    trajectory: List[Dict[str, Any]] = []
    for future in futures:
        chunk_rows, chunk_trajectory = future.result()
        rows.extend(chunk_rows)
        trajectory.extend(chunk_trajectory)

    integrals = write_rows_csv_task(rows, INTEGRAL_COLUMNS, os.path.join(out_dir, "integrals.csv"))
    written = {"integrals": integrals, "max_residual": max((r["residual"] for r in rows), default=0.0)}
    if run.t_grid:
        written["trajectory"] = write_rows_csv_task(
            trajectory, TRAJECTORY_COLUMNS, os.path.join(out_dir, "trajectory.csv")
        )
    logger.info(f"Largest decomposition residual {written['max_residual']!r}")
    return written
