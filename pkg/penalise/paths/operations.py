"""
Path operations: symmetrisation, concatenation, shift and last exit from 0.
"""
import numpy as np

from penalise.exceptions import ArgumentError
from penalise.paths.grid import SamplePath, TimeGrid


def symmetrize(path: SamplePath, sign: int) -> SamplePath:
    """Multiply a path by sign ∈ {+1, −1}."""
    if sign not in (1, -1):
        raise ArgumentError(f"sign must be +1 or -1, got {sign!r}")
    if sign == 1:
        return path
    return SamplePath(path.grid, -path.values)


def concat(head: SamplePath, tail: SamplePath) -> SamplePath:
    """
    Concatenate a path on [0, u] with a path started at time 0.

    The result follows head on [0, u] and the tail shifted by u afterwards
    when head(u) = tail(0). Otherwise it stays frozen at head(u) on the tail's
    shifted grid.

    Args:
        head: Path on [0, u]
        tail: Path on [0, span]

    Returns:
        Path on [0, u + span]
    """
    u = head.grid.span
    times = np.concatenate((head.times, u + tail.times[1:]))
    if head.values[-1] == tail.values[0]:
        rest = tail.values[1:]
    else:
        rest = np.full(tail.values.size - 1, head.values[-1])
    return SamplePath(TimeGrid(times), np.concatenate((head.values, rest)))


def shift_path(path: SamplePath, u: float) -> SamplePath:
    """
    Return s ↦ X_{u+s} on the remaining grid.

    Raises:
        ArgumentError: If u is beyond the span or not a grid node
    """
    if u < 0 or u > path.grid.span * (1 + 1e-15):
        raise ArgumentError(f"Shift {u} outside the path span [0, {path.grid.span}]")
    i = path.grid.index_of(u)
    if i == 0:
        return path
    return SamplePath(TimeGrid(path.times[i:] - path.times[i]), path.values[i:])


def last_exit_batch(times: np.ndarray, values: np.ndarray, horizon_index: int) -> np.ndarray:
    """
    Vectorised last zero before times[horizon_index].

    The last cell [t_i, t_{i+1}] with v_i·v_{i+1} <= 0 is located and its zero
    found by linear interpolation; a cell with both ends at 0 gives t_{i+1}.

    Args:
        times: Grid nodes, shared or one row per path
        values: Paths, shape (n_paths, len(times))
        horizon_index: Index of the horizon node

    Returns:
        g^{(T)} for every path, 0 when no cell qualifies
    """
    values = np.atleast_2d(values)
    if horizon_index == 0:
        return np.zeros(values.shape[0])
    left = values[:, :horizon_index]
    right = values[:, 1 : horizon_index + 1]
    hits = left * right <= 0.0
    found = hits.any(axis=1)
    cell = horizon_index - 1 - np.argmax(hits[:, ::-1], axis=1)
    rows = np.arange(values.shape[0])
    vl, vr = left[rows, cell], right[rows, cell]
    nodes = np.broadcast_to(times, values.shape)
    t0, t1 = nodes[rows, cell], nodes[rows, cell + 1]
    denominator = vl - vr
    both_zero = denominator == 0.0
    fraction = np.divide(vl, denominator, out=np.ones_like(vl), where=~both_zero)
    return np.where(found, t0 + (t1 - t0) * fraction, 0.0)


def last_exit(path: SamplePath, horizon: float) -> float:
    """
    g^{(T)}: the last zero of the piecewise-linear path before the horizon node.

    Args:
        path: Sample path
        horizon: A grid node T

    Returns:
        The interpolated last zero, 0 if the path never returns to 0
    """
    k = path.grid.index_of(horizon)
    return float(last_exit_batch(path.times, path.values[None, :], k)[0])
