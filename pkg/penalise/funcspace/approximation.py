"""
Dyadic conditional-average approximation of integrands by step functions.
"""
import math

import numpy as np
from prefect.logging import get_logger

from penalise.exceptions import ArgumentError, NotApproximableError
from penalise.funcspace.step import StepFunction
from penalise.numerics.integrand import Integrand1D
from penalise.numerics.norms import l1_one_plus_sqrt_norm, l2_norm

logger = get_logger(__name__)

_CELL_NODES, _CELL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _piece_integrals(f: Integrand1D, edges: np.ndarray) -> np.ndarray:
    """∫ f over each [edges[i], edges[i+1]) by 16-point Gauss–Legendre."""
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    nodes = (0.5 * (lo + hi))[:, None] + half[:, None] * _CELL_NODES[None, :]
    values = f(nodes)
    if not np.all(np.isfinite(values)):
        raise NotApproximableError(f"{f.name or 'integrand'} is not finite inside a dyadic cell")
    quadrature = half * (values @ _CELL_WEIGHTS)
    # constant pieces are integrated exactly
    constant = np.all(values == values[:, :1], axis=1)
    return np.where(constant, values[:, 0] * (hi - lo), quadrature)


def approximate(f: Integrand1D, level: int, check_membership: bool = True) -> StepFunction:
    """
    Average f over the dyadic cells of mesh 2^{-level} covering [0, 2^{level}).

    The approximants converge to f in L²(ds) and in L¹(ds/(1+√s)) as the
    level grows. Cells are split at the declared breakpoints of f before
    integrating, so dyadic-aligned step functions are reproduced exactly.

    Args:
        f: Integrand in L² ∩ L¹(ds/(1+√s))
        level: Positive dyadic level L
        check_membership: Whether to verify both norms are finite first

    Returns:
        The canonical step function of cell averages

    Raises:
        ArgumentError: If level is not a positive integer
        NotApproximableError: If f is outside the admissible class
    """
    if isinstance(level, bool) or not isinstance(level, (int, np.integer)) or level < 1:
        raise ArgumentError(f"level must be a positive integer, got {level!r}")
    if check_membership:
        l2 = l2_norm(f)
        weighted = l1_one_plus_sqrt_norm(f)
        if not (math.isfinite(l2) and math.isfinite(weighted)):
            raise NotApproximableError(
                f"{f.name or 'integrand'} is not in L2 and L1(ds/(1+sqrt s)): "
                f"l2={l2}, l1_one_plus_sqrt={weighted}"
            )

    mesh = 2.0 ** -level
    reach = min(2.0 ** level, f.support_end)
    n_cells = int(math.ceil(reach / mesh))
    if n_cells == 0:
        return StepFunction.zero()
    cells = mesh * np.arange(n_cells + 1)
    inner = [b for b in f.breakpoints if 0 < b < cells[-1] and b / mesh != round(b / mesh)]
    edges = np.union1d(cells, np.asarray(inner, dtype=float))
    starts = np.searchsorted(edges, cells[:-1])
    integrals = np.add.reduceat(_piece_integrals(f, edges), starts)
    logger.debug("Approximated %s on %d dyadic cells at level %d", f.name, n_cells, level)
    return StepFunction(cells, integrals / mesh).canonical()
