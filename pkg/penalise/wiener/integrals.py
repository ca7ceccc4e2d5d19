"""
Wiener integrals of step functions: Stieltjes sums, the bridge identity and
the centred Bessel integral.
"""
import math
from typing import Optional

import numpy as np
from prefect.logging import get_logger
from pydantic import BaseModel, ConfigDict, Field

from penalise.exceptions import ArgumentError, IdentityCheckError
from penalise.funcspace.operations import project_bridge, truncate
from penalise.funcspace.step import StepFunction
from penalise.paths.grid import NODE_TOLERANCE, SamplePath

logger = get_logger(__name__)

BRIDGE_IDENTITY_TOLERANCE = 1e-10
BESSEL_DRIFT = math.sqrt(2.0 / math.pi)


class IntegralValue(BaseModel):
    """A Wiener integral evaluated on one path."""
    model_config = ConfigDict(ser_json_inf_nan="constants")

    value: float = Field(..., description="∫ f dX")
    dt: Optional[float] = Field(None, description="Grid Δ of the path; None for explicit grids")
    exact: bool = Field(True, description="Whether every breakpoint of f is a grid node")
    identity_residual: Optional[float] = Field(
        None, description="Relative residual of the bridge identity, when checked"
    )


def _on_grid(times: np.ndarray, points: np.ndarray) -> bool:
    index = np.clip(np.searchsorted(times, points), 0, times.size - 1)
    below = np.clip(index - 1, 0, times.size - 1)
    gap = np.minimum(np.abs(times[index] - points), np.abs(times[below] - points))
    return bool(np.all(gap <= NODE_TOLERANCE * np.maximum(1.0, points)))


def values_at(times: np.ndarray, values: np.ndarray, points: np.ndarray) -> np.ndarray:
    """
    Piecewise-linear values of a batch of paths at the given points.

    Args:
        times: Grid nodes
        values: Paths, shape (n, len(times))
        points: Times within the span

    Returns:
        Array of shape (n, len(points)); exact at grid nodes
    """
    values = np.atleast_2d(values)
    if times.size == 1:
        return np.repeat(values[:, :1], points.size, axis=1)
    index = np.clip(np.searchsorted(times, points, side="right") - 1, 0, times.size - 2)
    weight = (points - times[index]) / (times[index + 1] - times[index])
    at = np.isclose(weight, 0.0, rtol=0.0, atol=NODE_TOLERANCE)
    ahead = np.isclose(weight, 1.0, rtol=0.0, atol=NODE_TOLERANCE)
    mixed = values[:, index] * (1.0 - weight) + values[:, index + 1] * weight
    return np.where(at, values[:, index], np.where(ahead, values[:, index + 1], mixed))


def _check_span(f: StepFunction, span: float) -> None:
    if f.support_end > span * (1.0 + NODE_TOLERANCE) + NODE_TOLERANCE:
        raise ArgumentError(f"Support of f ends at {f.support_end}, beyond the path span {span}")


def stieltjes_batch(f: StepFunction, times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Σ c_k (X_{t_k} − X_{t_{k−1}}) for every path of a batch."""
    _check_span(f, float(times[-1]))
    values = np.atleast_2d(values)
    if f.n == 0:
        return np.zeros(values.shape[0])
    at_breakpoints = values_at(times, values, f.breakpoints)
    return np.diff(at_breakpoints, axis=1) @ f.levels


def stieltjes(f: StepFunction, path: SamplePath) -> IntegralValue:
    """
    The Wiener integral of a step function along one path.

    Breakpoints between grid nodes read the path by linear interpolation, and
    the result is then flagged as not exact.

    Args:
        f: Step function supported within the path span
        path: Sample path

    Returns:
        IntegralValue
    """
    value = float(stieltjes_batch(f, path.times, path.values[None, :])[0])
    return IntegralValue(
        value=value,
        dt=path.grid.resolution,
        exact=_on_grid(path.times, f.breakpoints),
    )


def bridge_integral(
    f: StepFunction,
    u: float,
    bridge: SamplePath,
    check_identity: bool = True,
    tolerance: float = BRIDGE_IDENTITY_TOLERANCE,
) -> IntegralValue:
    """
    ∫₀^u f dX along a bridge of length u.

    When the bridge carries its generating Brownian motion B, the value is
    compared with ∫₀^u (π_u f) dB.

    Args:
        f: Step function
        u: Bridge length
        bridge: Bridge path on [0, u]
        check_identity: Whether to compare with the projected integral
        tolerance: Allowed relative residual

    Returns:
        IntegralValue carrying the identity residual when checked

    Raises:
        ArgumentError: If f does not vanish on [u, ∞)
        IdentityCheckError: If the residual exceeds the tolerance
    """
    reach = f.canonical().support_end
    if reach > u + NODE_TOLERANCE * max(1.0, u):
        raise ArgumentError(f"f is supported up to {reach}, beyond the bridge length {u}; truncate it first")
    head = truncate(f, u)
    result = stieltjes(head, bridge)
    if not check_identity:
        return result
    if bridge.generator is None:
        logger.warning("Bridge path carries no generating Brownian motion; identity check skipped")
        return result
    generating = SamplePath(bridge.grid, bridge.generator)
    projected = stieltjes(project_bridge(head, u), generating)
    scale = (head.sup_norm() + 1.0) * (float(np.max(np.abs(bridge.generator))) + 1.0)
    residual = abs(result.value - projected.value) / scale
    if residual > tolerance:
        raise IdentityCheckError(
            f"Bridge identity residual {residual:.3g} exceeds {tolerance:.3g}"
        )
    return result.model_copy(update={"identity_residual": residual})


def bessel_centering(f: StepFunction) -> float:
    """√(2/π)∫ f(s) ds/√s, the drift part of ∫ f dR under R⁺."""
    return BESSEL_DRIFT * f.sqrt_weighted_integral()


def bessel_integral_centered(f: StepFunction, bessel: SamplePath) -> IntegralValue:
    """
    ∫ f dX̂ with X̂_t = X_t − √(2/π)∫₀^t ds/√s along a Bessel(3) path.

    Args:
        f: Step function
        bessel: Path from sample_bessel3

    Returns:
        IntegralValue of the centred integral
    """
    raw = stieltjes(f, bessel)
    return raw.model_copy(update={"value": raw.value - bessel_centering(f)})


def bessel_centered_batch(f: StepFunction, times: np.ndarray, values: np.ndarray) -> np.ndarray:
    return stieltjes_batch(f, times, values) - bessel_centering(f)
