"""
Deterministic quadrature and root-finding primitives used by every other module.

Integrals are computed by adaptive bisection of panels, each panel integrated by a fixed-order
Gauss-Legendre rule. Integrands are evaluated on numpy arrays of nodes, one call per panel, so every
integrand in the package is written as a vectorised (ufunc-style) callable. Known kinks of an integrand,
such as the support endpoints of a kernel, must be passed as ``points`` so that they become panel edges.

MIT License
"""

import heapq
import itertools
import logging
import math
from typing import Callable, Iterable

import numpy as np
import numpy.typing as npt
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import brentq

from .constants import (
    gauss_legendre_order,
    quad_abs_tol,
    quad_max_subdivisions,
    quad_rel_tol,
    root_max_iters,
    root_x_tol,
)
from .errors import QuadratureError, RootFindingError
from .utils import FloatArray

logger = logging.getLogger(__name__)

Integrand = Callable[[FloatArray], npt.ArrayLike]
ScalarFunction = Callable[[float], float]

_NODES, _WEIGHTS = leggauss(gauss_legendre_order)


class QuadSpec(BaseModel):
    """Accuracy requirements of :func:`integrate`."""

    model_config = ConfigDict(frozen=True)

    rel_tol: float = Field(default=quad_rel_tol, gt=0)
    abs_tol: float = Field(default=quad_abs_tol, gt=0)
    max_subdivisions: int = Field(default=quad_max_subdivisions, ge=1)


class RootSpec(BaseModel):
    """Accuracy requirements of :func:`find_root`."""

    model_config = ConfigDict(frozen=True)

    x_tol: float = Field(default=root_x_tol, gt=0)
    max_iters: int = Field(default=root_max_iters, ge=1)


DEFAULT_QUAD = QuadSpec()
DEFAULT_ROOT = RootSpec()


def _gauss_panel(f: Integrand, a: float, b: float) -> tuple[float, float]:
    """
    Integrate ``f`` over ``[a, b]`` with the rule on the whole panel and on both halves.

    Returns
    -------
    (estimate, error) : tuple[float, float]
        The two-half estimate and its distance to the single-panel estimate.
    """
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    quarter = 0.5 * half
    nodes = np.concatenate(
        [
            mid + half * _NODES,
            0.5 * (a + mid) + quarter * _NODES,
            0.5 * (mid + b) + quarter * _NODES,
        ]
    )
    values = np.broadcast_to(np.asarray(f(nodes), dtype=np.float64), nodes.shape)
    if not np.all(np.isfinite(values)):
        raise QuadratureError(estimate=math.nan, error_bound=math.inf, subdivisions=0)

    k = len(_NODES)
    whole = half * float(np.dot(_WEIGHTS, values[:k]))
    refined = quarter * (float(np.dot(_WEIGHTS, values[k : 2 * k])) + float(np.dot(_WEIGHTS, values[2 * k :])))
    return refined, abs(refined - whole)


def integrate(
    f: Integrand,
    lo: float,
    hi: float,
    spec: QuadSpec = DEFAULT_QUAD,
    points: Iterable[float] = (),
) -> float:
    """
    Integrate a vectorised function over a finite interval.

    Panels are kept in a priority queue ordered by their error estimate; the worst panel is bisected until the
    summed error estimate falls below ``max(spec.abs_tol, spec.rel_tol * |I|)``. Panel order is fully
    determined by the inputs, so repeated calls return bit-identical results.

    Parameters
    ----------
    f : Callable[[np.ndarray], array-like]
        Integrand, evaluated on 1-D arrays of nodes.
    lo, hi : float
        Integration limits, ``lo <= hi``.
    spec : QuadSpec
        Tolerances and subdivision budget.
    points : Iterable[float]
        Known kink or jump locations of ``f``. Those strictly inside ``(lo, hi)`` become panel edges.

    Returns
    -------
    float
        The integral estimate.

    Raises
    ------
    QuadratureError
        When the subdivision budget is exhausted or the integrand is not finite at a node.
    """
    lo, hi = float(lo), float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f'integration limits must be finite, got [{lo}, {hi}]')
    if lo > hi:
        raise ValueError(f'integration limits must satisfy lo <= hi, got [{lo}, {hi}]')
    if lo == hi:
        return 0.0

    edges = sorted({lo, hi} | {float(p) for p in points if lo < p < hi})
    counter = itertools.count()
    heap: list[tuple[float, int, float, float, float]] = []
    for a, b in itertools.pairwise(edges):
        estimate, error = _gauss_panel(f, a, b)
        heap.append((-error, next(counter), a, b, estimate))
    heapq.heapify(heap)

    total = math.fsum(item[4] for item in heap)
    total_error = math.fsum(-item[0] for item in heap)
    subdivisions = 0
    while total_error > max(spec.abs_tol, spec.rel_tol * abs(total)):
        if subdivisions >= spec.max_subdivisions:
            raise QuadratureError(estimate=total, error_bound=total_error, subdivisions=subdivisions)
        neg_error, _, a, b, estimate = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if not a < mid < b:
            # panel has shrunk to adjacent floats
            raise QuadratureError(estimate=total, error_bound=total_error, subdivisions=subdivisions)
        total -= estimate
        total_error += neg_error
        for left, right in ((a, mid), (mid, b)):
            child_estimate, child_error = _gauss_panel(f, left, right)
            heapq.heappush(heap, (-child_error, next(counter), left, right, child_estimate))
            total += child_estimate
            total_error += child_error
        subdivisions += 1

    if subdivisions > 0:
        logger.debug(f'integrate [{lo}, {hi}]: {subdivisions} subdivisions, {len(heap)} panels')
    return math.fsum(item[4] for item in heap)


def find_root(f: ScalarFunction, lo: float, hi: float, spec: RootSpec = DEFAULT_ROOT) -> float:
    """
    Find a root of a continuous function bracketed by ``[lo, hi]``.

    Brent's method (bisection safeguarded secant and inverse quadratic steps) never leaves the bracket.

    Raises
    ------
    RootFindingError
        When ``f(lo)`` and ``f(hi)`` have the same strict sign, or the iteration budget is exhausted.
    """
    lo, hi = float(lo), float(hi)
    if lo > hi:
        raise ValueError(f'root bracket must satisfy lo <= hi, got [{lo}, {hi}]')
    f_lo, f_hi = float(f(lo)), float(f(hi))
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if np.sign(f_lo) == np.sign(f_hi):
        raise RootFindingError(f'no sign change on [{lo}, {hi}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}')

    try:
        root, result = brentq(
            f, lo, hi, xtol=spec.x_tol, maxiter=spec.max_iters, full_output=True, disp=False
        )
    except (RuntimeError, ValueError) as exc:
        raise RootFindingError(f'root search on [{lo}, {hi}] failed: {exc}') from exc
    if not result.converged:
        raise RootFindingError(f'root search on [{lo}, {hi}] did not converge after {result.iterations} iterations')
    return float(root)
