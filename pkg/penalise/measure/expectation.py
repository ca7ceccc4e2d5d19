"""
Monte Carlo estimation of 𝒲-functionals through the tilted measure μ_φ.
"""
import math
from typing import Callable, Iterable, Tuple

import numpy as np
from prefect.logging import get_logger

from penalise.exceptions import ArgumentError, DegenerateWeightError, NonFiniteFunctionalError
from penalise.models.estimate import Estimate, RatioEstimate
from penalise.measure.tilted import TiltedBatch, sample_tilted_batch
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.grid import SeedSpec

logger = get_logger(__name__)

Functional = Callable[[TiltedBatch], np.ndarray]

DEFAULT_CHUNK_SIZE = 4096
MAX_NON_FINITE_FRACTION = 1e-3


def chunk_sizes(n_paths: int, chunk_size: int) -> list:
    """Sizes of the consecutive chunks covering n_paths."""
    if n_paths < 1 or chunk_size < 1:
        raise ArgumentError(f"n_paths and chunk_size must be positive, got {n_paths}, {chunk_size}")
    full, rest = divmod(n_paths, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def _batches(
    tilt: TiltingConfig,
    horizon: float,
    query_times: Iterable[float],
    seed: SeedSpec,
    n_paths: int,
    chunk_size: int,
):
    times = list(query_times)
    for i, size in enumerate(chunk_sizes(n_paths, chunk_size)):
        yield sample_tilted_batch(tilt, horizon, times, seed.child(i), size)


def w_expectation(
    functional: Functional,
    tilt: TiltingConfig,
    n_paths: int,
    seed: SeedSpec,
    query_times: Iterable[float] = (0.0,),
    horizon: float = 16.0,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    max_non_finite: float = MAX_NON_FINITE_FRACTION,
) -> Estimate:
    """
    Estimate E_{μ_φ}[F] from n_paths tilted draws.

    Chunk i is drawn from stream seed.child(i) and chunk Estimates are merged
    in chunk order, so the result depends only on the arguments.
    Multiply the mean by tilt.w_mass (C_φ/√(2π)) to estimate 𝒲[F·φ(g)].

    Args:
        functional: Maps a TiltedBatch to one value per draw
        tilt: Tilting function
        n_paths: Number of draws
        seed: First random stream
        query_times: Times at which the functional reads the path
        horizon: Conditioning bound H on u
        chunk_size: Draws per chunk
        max_non_finite: Fraction of non-finite values that aborts the estimate

    Returns:
        Estimate of E_{μ_φ}[F]

    Raises:
        NonFiniteFunctionalError: If too many evaluations are not finite
    """
    estimate = Estimate()
    for batch in _batches(tilt, horizon, query_times, seed, n_paths, chunk_size):
        values = np.broadcast_to(np.asarray(functional(batch), dtype=float), batch.u.shape)
        estimate = estimate.merge(Estimate.from_samples(values))
    if estimate.non_finite:
        logger.warning("Dropped %d non-finite functional values", estimate.non_finite)
    if estimate.non_finite_fraction > max_non_finite:
        raise NonFiniteFunctionalError(
            f"{estimate.non_finite} of {n_paths} functional values are not finite"
        )
    return estimate


def w_value(estimate: Estimate, tilt: TiltingConfig) -> Tuple[float, float]:
    """(value, stderr) of 𝒲[F·φ(g)] from an estimate of E_{μ_φ}[F]."""
    return tilt.w_mass * estimate.mean, tilt.w_mass * estimate.stderr


def wG_probability(
    event: Functional,
    weight: Functional,
    tilt: TiltingConfig,
    n_paths: int,
    seed: SeedSpec,
    query_times: Iterable[float] = (0.0,),
    horizon: float = 16.0,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> RatioEstimate:
    """
    Estimate 𝒲^G(A) = 𝒲[1_A G]/𝒲[G] by reweighting μ_φ draws.

    Both numerator and denominator use the same draws with importance weight
    G/φ(u); the ratio standard error comes from the delta method.

    Args:
        event: Indicator of A per draw
        weight: G per draw, non-negative
        tilt: Tilting function
        n_paths: Number of draws
        seed: First random stream
        query_times: Times at which event and weight read the path
        horizon: Conditioning bound H on u
        chunk_size: Draws per chunk

    Returns:
        RatioEstimate of 𝒲^G(A)

    Raises:
        DegenerateWeightError: If 𝒲[G] is estimated within 3 stderr of 0
    """
    ratio = RatioEstimate()
    for batch in _batches(tilt, horizon, query_times, seed, n_paths, chunk_size):
        g = np.asarray(weight(batch), dtype=float) / tilt.phi(batch.u)
        a = np.asarray(event(batch), dtype=float) * g
        ratio = ratio.merge(RatioEstimate.from_samples(a, g))
    denominator = ratio.denominator
    if not abs(denominator.mean) > 3.0 * (denominator.stderr if math.isfinite(denominator.stderr) else 0.0):
        raise DegenerateWeightError(
            f"weight degenerate: E[G/φ(u)] = {denominator.mean} with stderr {denominator.stderr}"
        )
    return ratio
