"""
Sampling from the tilted finite measure μ_φ.

Under μ_φ the last exit time u has density φ(u)/(C_φ√u); given u the path is
a Brownian bridge of length u followed by a Bessel(3) process multiplied by
an independent fair sign.
"""
import math
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np
from prefect.logging import get_logger

from penalise.exceptions import ArgumentError, ConfigurationError
from penalise.numerics.tilting import TiltingConfig
from penalise.paths.grid import SamplePath, SeedSpec, TimeGrid
from penalise.paths.operations import concat, last_exit_batch, symmetrize
from penalise.paths.samplers import bridge_from_bm, gaussian_walk

logger = get_logger(__name__)

MAX_TRUNCATION_MASS = 1e-6


@dataclass(frozen=True)
class TiltedSample:
    """
    One draw from μ_φ on a uniform grid with u inserted as a node.

    Attributes:
        u: Last exit time
        sign: Sign ε of the Bessel tail
        bridge: Bridge part on [0, u], carrying its generating Brownian motion
        bessel: Unsigned Bessel(3) tail on [0, H − u]
        full: Concatenated path on [0, H]
        horizon: H
        truncation_mass: μ_φ(u > H) removed by conditioning on u <= H
    """

    u: float
    sign: int
    bridge: SamplePath
    bessel: SamplePath
    full: SamplePath
    horizon: float
    truncation_mass: float

    @property
    def tail(self) -> SamplePath:
        """The signed tail ε·R."""
        return symmetrize(self.bessel, self.sign)


@dataclass(frozen=True)
class TiltedBatch:
    """
    Many μ_φ draws observed exactly at a common set of query times.

    Attributes:
        times: Query times q₀ = 0 < q₁ < … (at most the horizon)
        u: Last exit times, shape (n,)
        sign: Signs ε, shape (n,)
        bridge: Bridge part X_{q∧u}, zero for q >= u, shape (n, m)
        tail: Signed tail ε·R_{(q−u)∨0}, zero for q <= u, shape (n, m)
        horizon: H
        truncation_mass: μ_φ(u > H)
    """

    times: np.ndarray
    u: np.ndarray
    sign: np.ndarray
    bridge: np.ndarray
    tail: np.ndarray
    horizon: float
    truncation_mass: float

    @property
    def full(self) -> np.ndarray:
        """The concatenated path at the query times."""
        return self.bridge + self.tail

    @property
    def n_paths(self) -> int:
        return int(self.u.size)

    def index_of(self, t: float) -> int:
        return TimeGrid(self.times).index_of(t)

    def _with_last_exit(self) -> Tuple[np.ndarray, np.ndarray]:
        """Per-draw nodes and values with u inserted, shape (n, m + 1)."""
        full = self.full
        n, m = full.shape
        k = np.searchsorted(self.times, self.u)[:, None]
        columns = np.arange(m + 1)[None, :]
        source = np.clip(columns - (columns > k), 0, m - 1)
        at_u = columns == k
        times = np.where(at_u, self.u[:, None], self.times[source])
        values = np.where(at_u, 0.0, full[np.arange(n)[:, None], source])
        return times, values

    def last_exits(self) -> np.ndarray:
        """Last zero of every draw before the last query time, read with u as a node."""
        times, values = self._with_last_exit()
        return last_exit_batch(times, values, times.shape[1] - 1)

    def path(self, i: int) -> SamplePath:
        """
        Draw i as a path on the query times with u inserted as a node.

        Args:
            i: Row of the batch

        Returns:
            SamplePath vanishing exactly at u
        """
        u = float(self.u[i])
        k = int(np.searchsorted(self.times, u))
        if k < self.times.size and self.times[k] == u:
            return SamplePath(TimeGrid(self.times), self.full[i])
        return SamplePath(TimeGrid(np.insert(self.times, k, u)), np.insert(self.full[i], k, 0.0))


def check_horizon(tilt: TiltingConfig, horizon: float) -> float:
    """
    Return μ_φ(u > horizon) after checking it is below 1e-6.

    Raises:
        ArgumentError: If the horizon truncates too much mass
    """
    if not horizon > 0:
        raise ArgumentError(f"Horizon must be positive, got {horizon}")
    mass = tilt.tail_mass(horizon)
    if mass >= MAX_TRUNCATION_MASS:
        raise ArgumentError(
            f"Horizon {horizon} leaves mass {mass:.3g} >= {MAX_TRUNCATION_MASS} beyond it under {tilt.name}"
        )
    return mass


def sample_last_exit(
    tilt: TiltingConfig, horizon: float, rng: np.random.Generator, n: int
) -> np.ndarray:
    """
    Draw u from φ(u)/(C_φ√u) conditioned on u <= horizon.

    Exponential tilts are sampled exactly as Z²/(2·rate). Any other tilt is
    sampled by rejection from the Gamma(1/2, 1) envelope, which needs
    φ(u)e^u bounded.

    Raises:
        ConfigurationError: If no envelope exists for the tilt
    """
    out = np.empty(0)
    while out.size < n:
        need = n - out.size
        if tilt.rate is not None:
            z = rng.standard_normal(need + need // 8 + 8)
            draws = z * z / (2.0 * tilt.rate)
        else:
            if not math.isfinite(tilt.envelope):
                raise ConfigurationError(
                    f"φ(u)e^u is unbounded for {tilt.name}; rejection sampling of u is unavailable"
                )
            z = rng.standard_normal(2 * need + 16)
            proposals = z * z / 2.0
            accept = rng.random(proposals.size) * tilt.envelope <= tilt.phi(proposals) * np.exp(
                np.minimum(proposals, 700.0)
            )
            draws = proposals[accept]
        draws = draws[(draws > 0.0) & (draws <= horizon)]
        out = np.concatenate((out, draws[:need]))
    return out


def sample_tilted_batch(
    tilt: TiltingConfig,
    horizon: float,
    times: Iterable[float],
    seed: SeedSpec,
    n_paths: int,
) -> TiltedBatch:
    """
    Sample n_paths draws from μ_φ exactly at the given query times.

    Only the query times are simulated: the Brownian motion behind the bridge
    is drawn at q∧u and u, and the Bessel tail at (q−u)∨0.

    Args:
        tilt: Tilting function
        horizon: Conditioning bound H on u (and last query time)
        times: Query times within [0, H]
        seed: Random stream
        n_paths: Number of draws

    Returns:
        TiltedBatch
    """
    if n_paths < 1:
        raise ArgumentError(f"n_paths must be positive, got {n_paths}")
    q = TimeGrid.explicit(times).times
    if q[-1] > horizon * (1 + 1e-12):
        raise ArgumentError(f"Query time {q[-1]} beyond horizon {horizon}")
    mass = check_horizon(tilt, horizon)
    rng = seed.generator()

    u = sample_last_exit(tilt, horizon, rng, n_paths)
    sign = 2 * rng.integers(0, 2, size=n_paths) - 1

    clipped = np.minimum(q[None, :], u[:, None])
    stops = np.concatenate((clipped, u[:, None]), axis=1)
    steps = np.sqrt(np.diff(stops, axis=1))
    bm = np.zeros_like(stops)
    np.cumsum(rng.standard_normal(steps.shape) * steps, axis=1, out=bm[:, 1:])
    bridge = bm[:, :-1] - (clipped / u[:, None]) * bm[:, -1:]

    after = np.maximum(q[None, :] - u[:, None], 0.0)
    tail_steps = np.sqrt(np.diff(after, axis=1))
    walk = np.zeros(after.shape + (3,))
    increments = rng.standard_normal(tail_steps.shape + (3,)) * tail_steps[..., None]
    np.cumsum(increments, axis=1, out=walk[:, 1:])
    tail = sign[:, None] * np.sqrt(np.sum(walk * walk, axis=-1))

    return TiltedBatch(
        times=q,
        u=u,
        sign=sign,
        bridge=bridge,
        tail=tail,
        horizon=float(horizon),
        truncation_mass=mass,
    )


def sample_tilted(
    tilt: TiltingConfig, horizon: float, dt: float, seed: SeedSpec
) -> TiltedSample:
    """
    Sample one μ_φ path on the uniform grid of spacing dt with u inserted.

    Args:
        tilt: Tilting function
        horizon: H, with μ_φ(u > H) < 1e-6
        dt: Grid spacing Δ
        seed: Random stream

    Returns:
        TiltedSample whose full path vanishes exactly at u
    """
    mass = check_horizon(tilt, horizon)
    rng = seed.generator()
    u = float(sample_last_exit(tilt, horizon, rng, 1)[0])
    sign = int(2 * rng.integers(0, 2) - 1)

    grid = TimeGrid.uniform(horizon, dt).with_node(u)
    # with_node inserts u itself, never snapping it onto node 0
    k = int(np.searchsorted(grid.times, u))
    head_grid = TimeGrid(grid.times[: k + 1])
    bm = gaussian_walk(rng, head_grid.times, 1)[0]
    bridge = SamplePath(head_grid, bridge_from_bm(head_grid.times, bm), generator=bm)

    tail_grid = TimeGrid(grid.times[k:] - grid.times[k])
    walk = gaussian_walk(rng, tail_grid.times, 1, dims=3)[0]
    bessel = SamplePath(tail_grid, np.sqrt(np.sum(walk * walk, axis=-1)))

    full = concat(bridge, symmetrize(bessel, sign))
    return TiltedSample(
        u=u,
        sign=sign,
        bridge=bridge,
        bessel=bessel,
        full=full,
        horizon=float(horizon),
        truncation_mass=mass,
    )
