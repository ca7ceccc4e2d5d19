"""
The before/after last-exit decomposition I(f; u, X) = J⁽¹⁾ + J⁽²⁾ and the
partial integrals I_t.
"""
from typing import Iterable, List, Tuple

import numpy as np

from penalise.exceptions import ArgumentError
from penalise.funcspace.operations import shift, truncate
from penalise.funcspace.step import StepFunction
from penalise.measure.tilted import TiltedBatch, TiltedSample
from penalise.paths.grid import NODE_TOLERANCE, TimeGrid
from penalise.wiener.integrals import IntegralValue, stieltjes, stieltjes_batch


def _check_horizon(f: StepFunction, horizon: float) -> None:
    if f.support_end > horizon * (1.0 + NODE_TOLERANCE):
        raise ArgumentError(f"Support of f ends at {f.support_end}, beyond the horizon {horizon}")


def decompose_integral(
    f: StepFunction, sample: TiltedSample
) -> Tuple[IntegralValue, IntegralValue, IntegralValue]:
    """
    Split ∫ f dX at the last exit time u of a tilted sample.

    Args:
        f: Step function supported within the horizon
        sample: Tilted sample

    Returns:
        (whole, j1, j2) with whole = ∫ f dX on the full path,
        j1 = ∫₀^u f dX on the bridge part and j2 = ∫ f(s+u) d(θ_u X)_s
    """
    _check_horizon(f, sample.horizon)
    whole = stieltjes(f.refine((sample.u,)), sample.full)
    j1 = stieltjes(truncate(f, sample.u), sample.bridge)
    j2 = stieltjes(shift(f, sample.u), sample.tail)
    return whole, j1, j2


def decompose_batch(
    f: StepFunction, batch: TiltedBatch
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Vectorised (whole, j1, j2) on a TiltedBatch.

    The bridge array holds X_{q∧u} and the tail array holds (θ_u X)_{(q−u)∨0},
    so both parts are Stieltjes sums over the breakpoints of f.

    Raises:
        ArgumentError: If a breakpoint of f is not a query time of the batch
    """
    _check_horizon(f, batch.horizon)
    grid = TimeGrid(batch.times)
    for t in f.breakpoints:
        grid.index_of(float(t))
    whole = stieltjes_batch(f, batch.times, batch.full)
    j1 = stieltjes_batch(f, batch.times, batch.bridge)
    j2 = stieltjes_batch(f, batch.times, batch.tail)
    return whole, j1, j2


def partial_integrals(
    f: StepFunction, sample: TiltedSample, t_grid: TimeGrid
) -> List[IntegralValue]:
    """
    I_t = ∫₀^{u∧t} f dX + ∫₀^{(t−u)∨0} f(s+u) d(θ_u X)_s for every t of t_grid.

    Args:
        f: Step function
        sample: Tilted sample
        t_grid: Times within the horizon

    Returns:
        One IntegralValue per time
    """
    if t_grid.span > sample.horizon * (1.0 + NODE_TOLERANCE):
        raise ArgumentError(f"t-grid ends at {t_grid.span}, beyond the horizon {sample.horizon}")
    values = []
    for t in t_grid.times:
        _, j1, j2 = decompose_integral(truncate(f, float(t)), sample)
        values.append(j1.model_copy(update={"value": j1.value + j2.value, "exact": j1.exact and j2.exact}))
    return values


def partial_integrals_batch(
    f: StepFunction, batch: TiltedBatch, t_values: Iterable[float]
) -> np.ndarray:
    """I_t on every draw of a batch, shape (n_paths, len(t_values))."""
    columns = []
    for t in t_values:
        if t > batch.horizon * (1.0 + NODE_TOLERANCE):
            raise ArgumentError(f"t = {t} beyond the horizon {batch.horizon}")
        part = truncate(f, float(t))
        columns.append(
            stieltjes_batch(part, batch.times, batch.bridge)
            + stieltjes_batch(part, batch.times, batch.tail)
        )
    return np.stack(columns, axis=1) if columns else np.zeros((batch.n_paths, 0))
