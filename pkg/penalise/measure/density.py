"""
The absolute-continuity density Λ_T linking e^{-g}-weighted 𝒲 to Wiener measure.
"""
import math
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy import stats

from penalise.exceptions import IdentityCheckError
from penalise.numerics.quadrature import integrate_singular, integrate_to_infinity
from penalise.paths.grid import SamplePath
from penalise.paths.operations import last_exit_batch

SELF_TEST_POINTS: Tuple[Tuple[float, float], ...] = (
    (0.0, 1.0),
    (1.0, 1.0),
    (0.5, 0.25),
    (2.0, 3.0),
    (0.1, 8.0),
)
SELF_TEST_TOLERANCE = 1e-8


def lambda_integral_closed_form(x: "np.ndarray | float", T: float) -> np.ndarray:
    """∫₀^∞ du/√(2πu) e^{−(T+u)} e^{−x²/(2u)} = e^{−T}e^{−√2|x|}/√2."""
    return math.exp(-T) * np.exp(-math.sqrt(2.0) * np.abs(np.asarray(x, dtype=float))) / math.sqrt(2.0)


def lambda_integral_quadrature(x: float, T: float) -> float:
    """The same u-integral by singular quadrature."""
    def integrand(u: np.ndarray) -> np.ndarray:
        return np.exp(-(T + u) - x * x / (2.0 * u)) / np.sqrt(2.0 * math.pi * u)

    return integrate_to_infinity(integrand, 0.0, singular_left=True)


def verify_lambda_reduction(
    points: Sequence[Tuple[float, float]] = SELF_TEST_POINTS,
) -> List[Tuple[float, float, float, float, float]]:
    """
    Compare the closed form of the Λ_T u-integral with quadrature.

    Returns:
        Rows (x, T, closed form, quadrature, relative error)
    """
    rows = []
    for x, T in points:
        closed = float(lambda_integral_closed_form(x, T))
        direct = lambda_integral_quadrature(x, T)
        rows.append((x, T, closed, direct, abs(closed - direct) / abs(closed)))
    return rows


@lru_cache(maxsize=1)
def _reduction_verified() -> bool:
    worst = max(row[-1] for row in verify_lambda_reduction())
    if worst > SELF_TEST_TOLERANCE:
        raise IdentityCheckError(f"Λ_T closed form disagrees with quadrature (rel. error {worst:.3g})")
    return True


def lambda_T_values(x_T: np.ndarray, g_T: np.ndarray, T: float) -> np.ndarray:
    """Λ_T = |X_T|e^{−g^{(T)}} + e^{−T}e^{−√2|X_T|}/√2, elementwise."""
    _reduction_verified()
    x_T = np.asarray(x_T, dtype=float)
    return np.abs(x_T) * np.exp(-np.asarray(g_T, dtype=float)) + lambda_integral_closed_form(x_T, T)


def lambda_T_batch(times: np.ndarray, values: np.ndarray, T_index: int) -> np.ndarray:
    """Λ_T on a batch of paths, T = times[T_index]."""
    g = last_exit_batch(times, values, T_index)
    return lambda_T_values(np.asarray(values)[:, T_index], g, float(times[T_index]))


def lambda_T(path: SamplePath, T: float) -> float:
    """
    Evaluate Λ_T on one path.

    Args:
        path: Sample path
        T: A grid node

    Returns:
        Λ_T(X) > 0
    """
    k = path.grid.index_of(T)
    return float(lambda_T_batch(path.times, path.values[None, :], k)[0])


def lambda_T_expectation(T: float) -> float:
    """
    W[Λ_T] by quadrature over the joint law of (g^{(T)}, |X_T|).

    Given g^{(T)} = g the mean of |X_T| is √(π(T−g)/2), and g^{(T)} follows the
    arcsine law on [0, T]. The value equals 𝒲[e^{−g}] = 1/√2 for every T.
    """
    def first(g: np.ndarray) -> np.ndarray:
        arcsine = 1.0 / (math.pi * np.sqrt(g * (T - g)))
        return np.exp(-g) * np.sqrt(0.5 * math.pi * (T - g)) * arcsine

    def second(x: np.ndarray) -> np.ndarray:
        return 2.0 * stats.norm.pdf(x, scale=math.sqrt(T)) * lambda_integral_closed_form(x, T)

    head = integrate_singular(first, 0.0, T, singular_left=True, singular_right=True)
    return head + integrate_to_infinity(second, 0.0)
