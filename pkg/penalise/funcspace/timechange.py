"""
The time change M(t) = t + ∫₀^t |f(s)|² ds and its inverse L.
"""
from typing import Optional

import numpy as np

from penalise.exceptions import ArgumentError
from penalise.funcspace.step import StepFunction


def _nodes(f: StepFunction) -> np.ndarray:
    """M at the breakpoints of f."""
    slopes = 1.0 + f.levels * f.levels
    return np.concatenate(([0.0], np.cumsum(slopes * f.widths)))


def time_change_M(f: StepFunction, t: float) -> float:
    """
    Evaluate M(t) = t + ∫₀^t |f|² ds exactly.

    Args:
        f: Step function
        t: Time, t >= 0

    Returns:
        M(t)
    """
    if t < 0:
        raise ArgumentError(f"time_change_M needs t >= 0, got {t}")
    m = _nodes(f)
    if t >= f.support_end:
        return float(m[-1] + (t - f.support_end))
    k = int(np.searchsorted(f.breakpoints, t, side="right")) - 1
    c = f.levels[k]
    return float(m[k] + (1.0 + c * c) * (t - f.breakpoints[k]))


def time_change_L(f: StepFunction, v: float, horizon: Optional[float] = None) -> float:
    """
    Evaluate the inverse L of M.

    Args:
        f: Step function
        v: Value in [0, M(horizon)]
        horizon: Time T bounding the domain; unbounded when None

    Returns:
        L(v), with L(M(t)) = t

    Raises:
        ArgumentError: If v lies outside [0, M(horizon)]
    """
    if v < 0:
        raise ArgumentError(f"time_change_L needs v >= 0, got {v}")
    if horizon is not None and v > time_change_M(f, horizon):
        raise ArgumentError(f"v = {v} exceeds M({horizon}) = {time_change_M(f, horizon)}")
    m = _nodes(f)
    if v >= m[-1]:
        return float(f.support_end + (v - m[-1]))
    k = int(np.searchsorted(m, v, side="right")) - 1
    c = f.levels[k]
    return float(f.breakpoints[k] + (v - m[k]) / (1.0 + c * c))
