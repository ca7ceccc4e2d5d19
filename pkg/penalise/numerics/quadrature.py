"""
Adaptive Gauss–Legendre quadrature for integrands with inverse-square-root
endpoint singularities, and a dyadic-block integrator for infinite ranges.
"""
import math
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from prefect.logging import get_logger

from penalise.exceptions import ArgumentError, IntegrandNotFiniteError
from penalise.numerics.integrand import Integrand1D

logger = get_logger(__name__)

GAUSS_ORDER = 20
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_ORDER)

RELATIVE_TOLERANCE = 1e-11
MAX_DEPTH = 60

BLOCK_STOP_TOLERANCE = 1e-12
NON_HALVING_BLOCKS = 8
MAX_EMPTY_BLOCKS = 64
DIAGNOSIS_WINDOW = 32
MAX_BLOCKS = 1000
POWER_DIVERGENCE_EXPONENT = 1.1

Function = Callable[[np.ndarray], np.ndarray]


def _evaluate(g: Function, x: np.ndarray) -> np.ndarray:
    values = np.asarray(g(x), dtype=float)
    if values.shape != x.shape:
        values = np.broadcast_to(values, x.shape)
    if not np.all(np.isfinite(values)):
        bad = x[~np.isfinite(values)][0]
        raise IntegrandNotFiniteError(f"integrand not finite at interior node {bad!r}")
    return values


def _gauss_legendre(g: Function, a: float, b: float) -> Tuple[float, float]:
    """Return the fixed-order rule for ∫_a^b g and for ∫_a^b |g|."""
    half = 0.5 * (b - a)
    x = 0.5 * (a + b) + half * _NODES
    values = _evaluate(g, x)
    return half * float(np.dot(_WEIGHTS, values)), half * float(np.dot(_WEIGHTS, np.abs(values)))


def _adaptive(g: Function, a: float, b: float, rel_tol: float) -> float:
    estimate, scale = _gauss_legendre(g, a, b)
    if scale == 0.0:
        return 0.0
    tolerance = rel_tol * scale
    width = b - a
    parts: List[float] = []
    stack: List[Tuple[float, float, float, int]] = [(a, b, estimate, 0)]
    while stack:
        lo, hi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, _ = _gauss_legendre(g, lo, mid)
        right, _ = _gauss_legendre(g, mid, hi)
        refined = left + right
        if abs(refined - whole) <= tolerance * (hi - lo) / width or depth >= MAX_DEPTH:
            if depth >= MAX_DEPTH:
                logger.debug("Quadrature depth limit reached on [%r, %r]", lo, hi)
            parts.append(refined)
        else:
            stack.append((mid, hi, right, depth + 1))
            stack.append((lo, mid, left, depth + 1))
    return math.fsum(parts)


def _substituted(
    g: Function, a: float, b: float, singular_left: bool, singular_right: bool
) -> Tuple[Function, float, float]:
    """Map [a, b] to a variable in which flagged endpoint singularities cancel."""
    span = b - a
    if singular_left and singular_right:
        def h(theta: np.ndarray) -> np.ndarray:
            return _evaluate(g, a + span * np.sin(theta) ** 2) * span * np.sin(2.0 * theta)
        return h, 0.0, 0.5 * math.pi
    if singular_left:
        def h(tau: np.ndarray) -> np.ndarray:
            return _evaluate(g, a + span * tau * tau) * 2.0 * span * tau
        return h, 0.0, 1.0
    if singular_right:
        def h(tau: np.ndarray) -> np.ndarray:
            return _evaluate(g, b - span * tau * tau) * 2.0 * span * tau
        return h, 0.0, 1.0
    return g, a, b


def _split_points(g: Function, a: float, b: float, extra: Iterable[float]) -> List[float]:
    declared: Sequence[float] = getattr(g, "breakpoints", ())
    inner = sorted({float(p) for p in (*declared, *extra) if a < p < b})
    return [a, *inner, b]


def integrate_singular(
    g: Function,
    a: float,
    b: float,
    singular_left: bool = False,
    singular_right: bool = False,
    breakpoints: Iterable[float] = (),
    rel_tol: float = RELATIVE_TOLERANCE,
) -> float:
    """
    Integrate g over (a, b) allowing u^{-1/2}-type blowup at flagged ends.

    The interval is split at declared breakpoints; the first piece carries the
    left flag and the last piece the right flag. Flagged pieces are integrated
    after the substitutions u = a + (b−a)sin²θ (both ends) or u = a + (b−a)τ²
    (one end), so no node ever lands on a singular endpoint.

    Args:
        g: Vectorised integrand (an Integrand1D or any array callable)
        a: Lower limit
        b: Upper limit
        singular_left: Whether g may blow up like (u−a)^{-1/2}
        singular_right: Whether g may blow up like (b−u)^{-1/2}
        breakpoints: Additional split points
        rel_tol: Relative tolerance of the adaptive refinement

    Returns:
        The value of the integral

    Raises:
        ArgumentError: If a >= b or a limit is not finite
        IntegrandNotFiniteError: If g is not finite at an interior node
    """
    if not (math.isfinite(a) and math.isfinite(b)):
        raise ArgumentError("integrate_singular needs finite limits; use integrate_to_infinity")
    if a >= b:
        raise ArgumentError(f"Integration limits must satisfy a < b, got a={a}, b={b}")

    edges = _split_points(g, a, b, breakpoints)
    parts = []
    last = len(edges) - 2
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        h, lo_t, hi_t = _substituted(
            g, lo, hi, singular_left and i == 0, singular_right and i == last
        )
        parts.append(_adaptive(h, lo_t, hi_t, rel_tol))
    return math.fsum(parts)


def _tail_from_fit(ks: np.ndarray, blocks: np.ndarray) -> float:
    """Diagnose the tail of the block series; return its sum or ±∞."""
    magnitudes = np.abs(blocks)
    keep = magnitudes > 0
    if np.count_nonzero(keep) < 4:
        return 0.0
    ks, logs, sign = ks[keep], np.log(magnitudes[keep]), math.copysign(1.0, blocks[-1])

    geo_fit, geo_res, *_ = np.polyfit(ks, logs, 1, full=True)
    pow_fit, pow_res, *_ = np.polyfit(np.log(ks), logs, 1, full=True)
    geo_sse = float(geo_res[0]) if len(geo_res) else 0.0
    pow_sse = float(pow_res[0]) if len(pow_res) else 0.0
    last_k = float(ks[-1])

    if geo_sse <= pow_sse:
        ratio = math.exp(geo_fit[0])
        logger.debug("Block tail looks geometric with ratio %.6g", ratio)
        if ratio >= 1.0 - 1e-3:
            return sign * math.inf
        return sign * float(magnitudes[keep][-1]) * ratio / (1.0 - ratio)

    exponent = -float(pow_fit[0])
    logger.debug("Block tail looks polynomial with exponent %.6g", exponent)
    if exponent <= POWER_DIVERGENCE_EXPONENT:
        return sign * math.inf
    coefficient = math.exp(pow_fit[1])
    return sign * coefficient * (last_k + 0.5) ** (1.0 - exponent) / (exponent - 1.0)


def integrate_to_infinity(
    g: Function,
    a: float = 0.0,
    singular_left: bool = False,
    rel_tol: float = BLOCK_STOP_TOLERANCE,
) -> float:
    """
    Integrate g over (a, ∞) by dyadic blocks [2^k, 2^{k+1}).

    Blocks are added until one contributes less than rel_tol of the running
    total. Leading blocks that vanish are skipped, up to MAX_EMPTY_BLOCKS of
    them, before an integrand without a support_hint is reported as 0. When
    block contributions fail to halve over 8 consecutive blocks the series is
    diagnosed on its last 32 blocks: a geometric or power-law tail is fitted,
    and the integral is declared +∞ (returned as math.inf) when the fitted ratio
    is ≥ 1 or the fitted power exponent is ≤ 1.1.

    Args:
        g: Vectorised integrand; an Integrand1D support_hint bounds the range
        a: Lower limit (≥ 0)
        singular_left: Whether g may blow up like (u−a)^{-1/2}
        rel_tol: Relative contribution below which a block stops the sum

    Returns:
        The integral, or ±math.inf on detected divergence
    """
    if a < 0 or not math.isfinite(a):
        raise ArgumentError(f"Lower limit must be finite and >= 0, got {a}")

    end = g.support_end if isinstance(g, Integrand1D) else math.inf
    if isinstance(g, Integrand1D) and g.support_start > a:
        a, singular_left = g.support_start, False
    if end <= a:
        return 0.0
    if math.isfinite(end):
        return integrate_singular(g, a, end, singular_left=singular_left)

    parts: List[float] = []
    lo = a
    if lo < 1.0:
        parts.append(integrate_singular(g, lo, 1.0, singular_left=singular_left))
        lo, singular_left = 1.0, False
    k = int(math.floor(math.log2(lo)))
    hi = 2.0 ** (k + 1)

    ks: List[int] = []
    blocks: List[float] = []
    skipped = 0
    while True:
        block = integrate_singular(g, lo, hi, singular_left=singular_left)
        singular_left = False
        if block == 0.0 and not blocks and math.fsum(parts) == 0.0:
            skipped += 1
            if skipped >= MAX_EMPTY_BLOCKS:
                logger.warning(
                    "Integrand vanished on (%r, %r); give it a support_hint if it lives further out", a, hi
                )
                return 0.0
            lo, hi, k = hi, 2.0 * hi, k + 1
            continue
        ks.append(k)
        blocks.append(block)
        parts.append(block)
        total = math.fsum(parts)

        if total != 0.0 and abs(block) < rel_tol * abs(total):
            return total
        recent = np.abs(blocks[-(NON_HALVING_BLOCKS + 1):])

        not_halving = len(recent) == NON_HALVING_BLOCKS + 1 and bool(
            np.all(recent[1:] > 0.5 * recent[:-1])
        )
        window_ready = len(blocks) >= DIAGNOSIS_WINDOW + NON_HALVING_BLOCKS
        if (not_halving and window_ready) or len(blocks) >= MAX_BLOCKS:
            tail = _tail_from_fit(
                np.asarray(ks[-DIAGNOSIS_WINDOW:], dtype=float),
                np.asarray(blocks[-DIAGNOSIS_WINDOW:], dtype=float),
            )
            return total + tail if math.isfinite(tail) else tail

        lo, hi, k = hi, 2.0 * hi, k + 1


def integrate_half_line(
    g: Function, singular_origin: bool = True, split: Optional[float] = None
) -> float:
    """Integrate over (0, ∞), splitting at `split` (default 1) with the origin flag."""
    point = 1.0 if split is None else split
    head = integrate_singular(g, 0.0, point, singular_left=singular_origin)
    return head + integrate_to_infinity(g, point)
