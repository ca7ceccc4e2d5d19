"""
Refinement tables: how an estimate moves as Δ shrinks or t grows.
"""
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from penalise.exceptions import ArgumentError
from penalise.models.config import SuiteConfig
from penalise.models.reports import ConvergenceRow
from penalise.numerics.kernels import limit_ratio
from penalise.paths.grid import SeedSpec, TimeGrid
from penalise.paths.operations import last_exit_batch
from penalise.paths.samplers import sample_bm_batch
from penalise.verify.checks import build_context
from penalise.verify.context import CheckContext
from penalise.verify.corpus import step_corpus
from penalise.wiener.integrals import stieltjes_batch

GRID_LEVELS = [2.0 ** -k for k in range(6, 11)]
TIME_LEVELS = [25.0, 100.0, 400.0]


def _bm_isometry_rows(ctx: CheckContext, levels: Sequence[float]) -> List[ConvergenceRow]:
    f = step_corpus()[2]
    target = f.l2_norm_squared()
    rows = []
    for i, dt in enumerate(levels):
        grid = TimeGrid.uniform(f.support_end, dt)

        def draw(seed: SeedSpec, size: int, grid: TimeGrid = grid) -> Dict[str, np.ndarray]:
            return {"square": stieltjes_batch(f, grid.times, sample_bm_batch(grid, seed, size)) ** 2}

        estimate = ctx.accumulate(i, draw, chunk_size=ctx.chunk_for(len(grid)))["square"]
        rows.append(ConvergenceRow(
            check_id="bm_isometry", level=dt, estimate=estimate.mean,
            stderr=estimate.stderr, bias_proxy=abs(estimate.mean - target),
        ))
    return rows


def _arcsine_rows(ctx: CheckContext, levels: Sequence[float]) -> List[ConvergenceRow]:
    rows = []
    for i, dt in enumerate(levels):
        grid = TimeGrid.uniform(1.0, dt)

        def draw(seed: SeedSpec, size: int, grid: TimeGrid = grid) -> Dict[str, np.ndarray]:
            x = sample_bm_batch(grid, seed, size)
            return {"early": (last_exit_batch(grid.times, x, len(grid) - 1) <= 0.5).astype(float)}

        estimate = ctx.accumulate(i, draw, chunk_size=ctx.chunk_for(len(grid)))["early"]
        rows.append(ConvergenceRow(
            check_id="arcsine_law", level=dt, estimate=estimate.mean,
            stderr=estimate.stderr, bias_proxy=abs(estimate.mean - 0.5),
        ))
    return rows


def _limit_ratio_rows(ctx: CheckContext, levels: Sequence[float]) -> List[ConvergenceRow]:
    rows = []
    for t in levels:
        value = limit_ratio(ctx.tilt, t)
        rows.append(ConvergenceRow(
            check_id="limit_ratio", level=t, estimate=value,
            stderr=0.0, bias_proxy=abs(value - ctx.tilt.c_phi),
        ))
    return rows


TABLES: Dict[str, tuple] = {
    "bm_isometry": (_bm_isometry_rows, GRID_LEVELS),
    "arcsine_law": (_arcsine_rows, GRID_LEVELS),
    "limit_ratio": (_limit_ratio_rows, TIME_LEVELS),
}


def convergence_table(
    check_id: str, config: SuiteConfig, levels: Optional[Sequence[float]] = None
) -> List[ConvergenceRow]:
    """
    Rows (level, estimate, stderr, bias proxy) for one refinable check.

    Grid levels are spacings Δ; the limit_ratio levels are times t. The
    observed rate of the bias proxy is recorded by the caller, not asserted.

    Args:
        check_id: bm_isometry, arcsine_law or limit_ratio
        config: Suite configuration
        levels: Refinement levels (default: 2^-6..2^-10, or 25, 100, 400)

    Returns:
        One ConvergenceRow per level

    Raises:
        ArgumentError: If the check does not support refinement
    """
    if check_id not in TABLES:
        raise ArgumentError(
            f"No convergence table for check {check_id!r}; supported: {', '.join(TABLES)}"
        )
    build: Callable[[CheckContext, Sequence[float]], List[ConvergenceRow]]
    build, default = TABLES[check_id]
    chosen = list(levels) if levels else list(default)
    if any(not level > 0 for level in chosen):
        raise ArgumentError(f"Refinement levels must be positive, got {chosen}")
    return build(build_context(check_id, config), chosen)
