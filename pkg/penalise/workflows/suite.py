"""
Verification suite workflows.
"""
import os
from typing import List, Optional, Sequence

from prefect import flow, get_run_logger
from prefect.task_runners import ThreadPoolTaskRunner

from penalise import __version__
from penalise.models.config import RunConfig, SuiteConfig
from penalise.models.reports import CheckResult, ConvergenceRow, SuiteReport
from penalise.tasks.output import ensure_output_dir_task
from penalise.tasks.verification import convergence_table_task, run_check_task
from penalise.verify.checks import resolve_checks
from penalise.verify.report import (
    build_report,
    write_report_csv,
    write_report_json,
    write_resolved_config,
    write_table_csv,
)


@flow(name="Run Verification Suite")
def run_suite(config: SuiteConfig, checks: Optional[List[str]] = None) -> List[CheckResult]:
    """
    Run the verification checks concurrently and collect them in suite order.

    Args:
        config: Suite configuration
        checks: Subset of check ids (default: the 14 default checks)

    Returns:
        List of CheckResult in registry order
    """
    logger = get_run_logger()
    check_ids = resolve_checks(checks)
    logger.info(f"Running {len(check_ids)} checks with seed {config.seed}")

    futures = [run_check_task.submit(check_id, config) for check_id in check_ids]
    results = [future.result() for future in futures]

    failed = [r.check_id for r in results if r.verdict == "fail"]
    warned = [r.check_id for r in results if r.verdict == "warn"]
    if failed:
        logger.error(f"Failed checks: {', '.join(failed)}")
    if warned:
        logger.warning(f"Warned checks: {', '.join(warned)}")
    logger.info(f"{len(results) - len(failed) - len(warned)} of {len(results)} checks passed")
    return results


def suite_runner(workers: Optional[int] = None):
    """run_suite bound to a thread pool of the given size (default: CPU count)."""
    size = workers or os.cpu_count() or 1
    return run_suite.with_options(task_runner=ThreadPoolTaskRunner(max_workers=size))


@flow(name="Verify")
def verify_flow(run: RunConfig) -> SuiteReport:
    """
    Run the suite and write report.json, report.csv and resolved_config.json.

    Args:
        run: Resolved run configuration

    Returns:
        SuiteReport carrying the exit code
    """
    logger = get_run_logger()
    out_dir = ensure_output_dir_task(run.out)
    results = suite_runner(run.suite.workers)(run.suite, run.checks)
    report = build_report(results, run.suite, __version__)
    write_resolved_config(run, out_dir)
    write_report_json(report, out_dir)
    write_report_csv(report, out_dir)
    logger.info(f"Reports written to {out_dir}; exit code {report.exit_code}")
    return report


@flow(name="Convergence Table")
def convergence_table_flow(
    check_id: str, config: SuiteConfig, levels: Optional[Sequence[float]] = None
) -> List[ConvergenceRow]:
    """
    Build the refinement table of one check.

    Args:
        check_id: bm_isometry, arcsine_law or limit_ratio
        config: Suite configuration
        levels: Refinement levels (default per check)

    Returns:
        List of ConvergenceRow
    """
    logger = get_run_logger()
    logger.info(f"Building convergence table for {check_id}")
    return convergence_table_task(check_id, config, levels)


@flow(name="Table")
def table_flow(run: RunConfig) -> List[ConvergenceRow]:
    """
    Write table.csv and resolved_config.json for the check named in run.checks.

    Args:
        run: Resolved run configuration with exactly one check

    Returns:
        List of ConvergenceRow
    """
    logger = get_run_logger()
    if not run.checks or len(run.checks) != 1:
        raise ValueError("table needs exactly one --check")
    out_dir = ensure_output_dir_task(run.out)
    rows = convergence_table_flow(run.checks[0], run.suite, run.levels or None)
    write_resolved_config(run, out_dir)
    file_path = write_table_csv(rows, out_dir)
    logger.info(f"Table written to {file_path}")
    return rows
