"""
Kernel estimators of a distribution function on a known support [a, b].

The classical estimator averages K((x - X_i) / h) over the sample. The boundary-modified estimator is 0 at or below
a and 1 at or above b, swaps K for a left boundary antiderivative K^L(.; (x - a)/h) in the strip (a, a + h) and for
the right one K^R(.; (b - x)/h) in (b - h, b), and coincides with the classical estimator on [a + h, b - h].

MIT License
"""

import logging
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, model_validator

from .constants import sup_norm_grid_size
from .errors import SampleOutOfSupportError
from .kernels import BaseKernel, BoundaryKernelFamily
from .kernels.base import KernelName
from .kernels.boundary import FamilyName
from .utils import FloatArray, as_float_array, uniform_grid, unwrap_scalar

logger = logging.getLogger(__name__)

# upper bound on the number of (grid point, observation) pairs evaluated in one block
_BLOCK_ELEMENTS = 2**20


@dataclass(frozen=True, eq=False)
class Sample:
    """
    An ordered i.i.d. sample.

    Attributes:
        values: the observations, sorted ascending
    """

    values: FloatArray

    def __post_init__(self) -> None:
        values = np.sort(np.asarray(self.values, dtype=np.float64).ravel())
        if values.size < 1:
            raise ValueError('a sample needs at least one observation')
        if not np.all(np.isfinite(values)):
            raise ValueError('sample values must be finite')
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def check_support(self, a: float, b: float) -> None:
        """Raise if any observation lies outside the closed support [a, b]."""
        if self.values[0] < a or self.values[-1] > b:
            raise SampleOutOfSupportError(
                f'sample range [{self.values[0]}, {self.values[-1]}] is not contained in the support [{a}, {b}]'
            )


class EstimatorConfig(BaseModel):
    """
    Support, bandwidth and kernels of an estimator.

    ``family=None`` selects the classical estimator.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: float
    b: float
    h: float
    base: BaseKernel = BaseKernel()
    family: BoundaryKernelFamily | None = None

    @model_validator(mode='after')
    def _check_geometry(self) -> 'EstimatorConfig':
        if not self.a < self.b:
            raise ValueError(f'support must satisfy a < b, got [{self.a}, {self.b}]')
        if not 0.0 < self.h <= (self.b - self.a) / 2:
            raise ValueError(f'bandwidth must satisfy 0 < h <= (b - a)/2 = {(self.b - self.a) / 2}, got {self.h}')
        if self.family is not None and self.family.base != self.base:
            raise ValueError(
                f'boundary family is built over {self.family.base.name}, but the base kernel is {self.base.name}'
            )
        return self

    @classmethod
    def from_names(
        cls, a: float, b: float, h: float, kernel: KernelName = 'epanechnikov', family: FamilyName | None = None
    ) -> 'EstimatorConfig':
        """Build a configuration from kernel and family names, e.g. ``from_names(0, 1, 0.2, 'biweight', 'k3')``."""
        base = BaseKernel(kernel)
        return cls(a=a, b=b, h=h, base=base, family=None if family is None else BoundaryKernelFamily(family, base))

    @property
    def label(self) -> str:
        return 'classical' if self.family is None else self.family.variant

    def with_bandwidth(self, h: float) -> 'EstimatorConfig':
        return EstimatorConfig(a=self.a, b=self.b, h=h, base=self.base, family=self.family)


def _kernel_average(
    weights: Callable[[FloatArray, FloatArray], npt.ArrayLike], x: FloatArray, sample: Sample, h: float
) -> FloatArray:
    """
    (1/n) sum_i weights((x - X_i)/h, row) for every x, in blocks of grid rows.

    ``weights`` receives the scaled differences of a block and the indices of its rows.
    """
    out = np.empty(x.size, dtype=np.float64)
    block = max(1, _BLOCK_ELEMENTS // sample.n)
    for start in range(0, x.size, block):
        rows = np.arange(start, min(start + block, x.size))
        u = (x[rows, None] - sample.values[None, :]) / h
        out[rows] = np.asarray(weights(u, rows), dtype=np.float64).sum(axis=1) / sample.n
    return out


def classical_cdf(sample: Sample, base: BaseKernel, h: float, x: float | npt.ArrayLike) -> float | FloatArray:
    """
    The classical estimator (1/n) sum_i K((x - X_i)/h), vectorised over ``x``.

    Examples:
        >>> classical_cdf(Sample(np.array([0.3, 0.7])), BaseKernel(), 0.1, 0.5)
        0.5
    """
    if not h > 0.0:
        raise ValueError(f'bandwidth must be positive, got {h}')
    x_arr = np.atleast_1d(as_float_array(x)).ravel()
    values = _kernel_average(lambda u, _: base.antiderivative(u), x_arr, sample, h)
    return unwrap_scalar(values.reshape(np.shape(x)), x)


def boundary_cdf(sample: Sample, cfg: EstimatorConfig, x: float | npt.ArrayLike) -> float | FloatArray:
    """
    The boundary-modified estimator, vectorised over ``x``.

    The strips are selected through alpha = (x - a)/h and beta = (b - x)/h: the left kernel where 0 < alpha < 1,
    the right kernel where 0 < beta < 1, and K on the closed middle interval. With ``cfg.family`` None this is the
    classical estimator on the whole real line, with no clamping at a or b.

    Raises
    ------
    SampleOutOfSupportError
        If an observation lies outside [a, b].
    """
    sample.check_support(cfg.a, cfg.b)
    if cfg.family is None:
        return classical_cdf(sample, cfg.base, cfg.h, x)
    family = cfg.family

    x_arr = np.atleast_1d(as_float_array(x)).ravel()
    alpha = (x_arr - cfg.a) / cfg.h
    beta = (cfg.b - x_arr) / cfg.h
    above = x_arr >= cfg.b
    left = (x_arr > cfg.a) & (alpha < 1.0) & ~above
    right = (x_arr < cfg.b) & (beta < 1.0) & ~left & (x_arr > cfg.a)
    middle = (x_arr > cfg.a) & ~above & ~left & ~right

    values = np.where(above, 1.0, 0.0)
    if np.any(middle):
        values[middle] = _kernel_average(lambda u, _: cfg.base.antiderivative(u), x_arr[middle], sample, cfg.h)
    if np.any(left):
        left_alpha = alpha[left]
        values[left] = _kernel_average(
            lambda u, rows: family.left_antiderivative(u, left_alpha[rows, None]), x_arr[left], sample, cfg.h
        )
    if np.any(right):
        right_beta = beta[right]
        values[right] = _kernel_average(
            lambda u, rows: family.right_antiderivative(u, right_beta[rows, None]), x_arr[right], sample, cfg.h
        )
    return unwrap_scalar(values.reshape(np.shape(x)), x)


def evaluate_grid(sample: Sample, cfg: EstimatorConfig, grid: npt.ArrayLike) -> FloatArray:
    """The estimator on a nondecreasing grid."""
    grid_arr = np.atleast_1d(as_float_array(grid))
    if grid_arr.ndim != 1:
        raise ValueError(f'grid must be one-dimensional, got shape {grid_arr.shape}')
    if np.any(np.diff(grid_arr) < 0.0):
        raise ValueError('grid must be sorted in nondecreasing order')
    return np.atleast_1d(as_float_array(boundary_cdf(sample, cfg, grid_arr)))


def is_proper(values: npt.ArrayLike, tol: float = 1e-12) -> bool:
    """True when ``values`` lie in [-tol, 1 + tol] and never decrease by more than ``tol``."""
    arr = np.atleast_1d(as_float_array(values))
    if arr.size == 0:
        return True
    in_range = bool(np.all((arr >= -tol) & (arr <= 1.0 + tol)))
    return in_range and bool(np.all(np.diff(arr) >= -tol))


def sup_distance(
    sample: Sample, cfg: EstimatorConfig, cdf: Callable[[FloatArray], Any], grid_size: int = sup_norm_grid_size
) -> float:
    """
    max |F_est(x) - F(x)| over a uniform grid of [a, b] joined with the sample points.

    ``cdf`` is the true distribution function, vectorised over numpy arrays.
    """
    grid = np.union1d(uniform_grid(cfg.a, cfg.b, grid_size), sample.values)
    estimate = evaluate_grid(sample, cfg, grid)
    return float(np.max(np.abs(estimate - as_float_array(cdf(grid)))))
