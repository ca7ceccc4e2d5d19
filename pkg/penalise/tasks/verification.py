"""
Verification tasks for Prefect workflows.
"""
from typing import List, Optional, Sequence

from prefect import get_run_logger, task
from prefect.cache_policies import NO_CACHE

from penalise.models.config import SuiteConfig
from penalise.models.reports import CheckResult, ConvergenceRow
from penalise.verify.checks import run_check
from penalise.verify.tables import convergence_table


@task(name="run_check_task", cache_policy=NO_CACHE)
def run_check_task(check_id: str, config: SuiteConfig) -> CheckResult:
    """
    Run one verification check.

    Args:
        check_id: Registered check id
        config: Suite configuration

    Returns:
        CheckResult; a check that raises comes back as a failed result
    """
    logger = get_run_logger()
    logger.info(f"Running check {check_id} with {config.n_paths} paths")
    result = run_check(check_id, config)
    if result.verdict == "fail":
        logger.error(f"Check {check_id} failed: {result.message}")
    else:
        logger.info(f"Check {check_id}: {result.verdict} (z={result.z_score:.3g})")
    return result


@task(name="convergence_table_task", cache_policy=NO_CACHE)
def convergence_table_task(
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
    rows = convergence_table(check_id, config, levels)
    logger.info(f"Built {len(rows)} convergence rows for {check_id}")
    return rows
