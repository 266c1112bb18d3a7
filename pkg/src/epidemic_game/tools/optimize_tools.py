"""Bounded scalar minimization on [0, 1]: dense grid, then golden-section refinement."""
from __future__ import annotations

import logging
import math
from typing import Callable

import numpy as np

from ..errors import EvaluationError

logger = logging.getLogger(__name__)

GRID_INTERVALS = 10_000
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


def _checked(values: np.ndarray) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        raise EvaluationError("objective returned a non-finite value")
    return values


def _evaluate(f: Callable, u: float) -> float:
    return float(_checked(np.asarray(f(u), dtype=np.float64)))


def resolve_ties(minimizers: np.ndarray, keys: np.ndarray | None = None) -> int:
    """Pick one grid index among equal minimal values.

    With ``keys`` (one per minimizer) the smallest key wins; otherwise, and among
    equal keys, the smallest index.
    """
    if keys is None or minimizers.size == 1:
        return int(minimizers[0])
    return int(minimizers[int(np.argmin(keys))])


def golden_section(f: Callable, a: float, b: float, tol: float) -> float:
    """Golden-section search for a minimizer of ``f`` on [a, b]."""
    dist = b - a
    if dist <= tol:
        return (a + b) / 2.0

    n = int(math.ceil(math.log(tol / dist) / math.log(INV_PHI)))
    c = a + INV_PHI_SQ * dist
    d = a + INV_PHI * dist
    yc = _evaluate(f, c)
    yd = _evaluate(f, d)

    for _ in range(n - 1):
        if yc <= yd:
            b, d, yd = d, c, yc
            dist *= INV_PHI
            c = a + INV_PHI_SQ * dist
            yc = _evaluate(f, c)
        else:
            a, c, yc = c, d, yd
            dist *= INV_PHI
            d = a + INV_PHI * dist
            yd = _evaluate(f, d)

    return (a + d) / 2.0 if yc <= yd else (c + b) / 2.0


def scalar_minimize(
    f: Callable,
    tol: float = 1e-10,
    grid_intervals: int = GRID_INTERVALS,
    vectorized: bool = False,
    tie_key: Callable | None = None,
) -> tuple[float, float]:
    """Global minimizer of ``f`` on [0, 1].

    Args:
        f: Objective. With ``vectorized`` it must map an array of points to an
            array of values.
        tol: Width at which the golden-section refinement stops.
        grid_intervals: Number of intervals of the coarse grid.
        vectorized: Evaluate the grid with one call.
        tie_key: Vectorized secondary key ranking grid points whose objective
            values are exactly equal, such as the log of a cost that underflows.

    Returns:
        (u_min, f_min). The refined point replaces the best grid point only when
        it is strictly better, so ties keep the grid convention.

    Raises:
        ValueError: If ``tol`` is not positive.
        EvaluationError: If ``f`` returns a non-finite value.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")

    grid = np.linspace(0.0, 1.0, grid_intervals + 1)
    if vectorized:
        values = _checked(np.asarray(f(grid), dtype=np.float64))
    else:
        values = _checked(np.fromiter((f(u) for u in grid), dtype=np.float64, count=grid.size))

    best = values.min()
    minimizers = np.flatnonzero(values == best)
    keys = None
    if tie_key is not None and minimizers.size > 1:
        keys = np.asarray(tie_key(grid[minimizers]), dtype=np.float64)
    i = resolve_ties(minimizers, keys)
    u_best, f_best = float(grid[i]), float(best)

    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, grid.size - 1)])
    u_refined = golden_section(f, lo, hi, tol)
    f_refined = _evaluate(f, u_refined)
    if f_refined < f_best:
        return u_refined, f_refined
    return u_best, f_best
