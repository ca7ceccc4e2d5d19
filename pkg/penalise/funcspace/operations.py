"""
Shift, truncation and bridge projection of step functions.
"""
import numpy as np

from penalise.exceptions import ArgumentError
from penalise.funcspace.step import StepFunction


def shift(f: StepFunction, u: float) -> StepFunction:
    """
    Return s ↦ f(s + u).

    Args:
        f: Step function
        u: Shift, u >= 0

    Returns:
        The shifted step function
    """
    if u < 0:
        raise ArgumentError(f"shift needs u >= 0, got {u}")
    if u == 0:
        return f
    if u >= f.support_end:
        return StepFunction.zero()
    later = f.breakpoints[f.breakpoints > u]
    lefts = np.concatenate(([u], later[:-1]))
    return StepFunction(np.concatenate(([0.0], later - u)), f.evaluate(lefts))


def truncate(f: StepFunction, t: float) -> StepFunction:
    """
    Return f·1_{[0,t)}, inserting t as a breakpoint.

    Args:
        f: Step function
        t: Truncation time, t >= 0

    Returns:
        The truncated step function
    """
    if t < 0:
        raise ArgumentError(f"truncate needs t >= 0, got {t}")
    if t >= f.support_end:
        return f
    return f.restrict(0.0, t)


def project_bridge(f: StepFunction, u: float) -> StepFunction:
    """
    Return π_u f = f − (1/u)∫₀^u f restricted to [0, u).

    The result integrates to zero over [0, u) and has
    ‖π_u f‖² = ‖f‖²_{[0,u]} − (∫₀^u f)²/u.

    Args:
        f: Step function
        u: Bridge length, u > 0

    Returns:
        The projected step function supported on [0, u)
    """
    if not u > 0:
        raise ArgumentError(f"project_bridge needs u > 0, got {u}")
    window = f.restrict(0.0, u)
    if window.support_end < u:
        window = window.refine((u,))
    mean = float(np.dot(window.levels, window.widths / u))
    return StepFunction(window.breakpoints, window.levels - mean)
