"""
Test distributions with known cdf, density, second derivative and roughness.

The beta mixtures w B(1,2) + (1-w) B(2,b) on [0, 1] have a right derivative 2w of F at 0 and a second
derivative -2w + (1-w) b (b+1), so the strength of the boundary problem is tuned by the pair (w, b).

MIT License
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .constants import mixture_d1_targets, mixture_d2_targets
from .errors import OutOfFamilyError
from .estimator import Sample
from .numerics import DEFAULT_QUAD, QuadSpec, find_root, integrate
from .utils import FloatArray, as_float_array, unwrap_scalar

logger = logging.getLogger(__name__)


def _one_minus_pow(x: FloatArray, power: float) -> FloatArray:
    """(1 - x)^power for x in [0, 1], through exp(power * log1p(-x)) so that powers up to ~11 stay accurate near 1."""
    if power == 0.0:
        return np.ones_like(x)
    with np.errstate(divide='ignore'):
        return np.exp(power * np.log1p(-x))


class Distribution(ABC):
    """
    A continuous distribution on a finite support [a, b] with a twice differentiable cdf.

    Outside the support the cdf is clamped to 0 and 1, and the density and its derivative vanish.
    """

    @property
    @abstractmethod
    def support(self) -> tuple[float, float]:
        raise NotImplementedError('This method should be implemented by the distribution')

    @property
    @abstractmethod
    def kind(self) -> str:
        """Short name of the distribution family."""

    @property
    def is_uniform(self) -> bool:
        return False

    @abstractmethod
    def _cdf(self, x: FloatArray) -> FloatArray:
        """cdf on the open support."""

    @abstractmethod
    def _pdf(self, x: FloatArray) -> FloatArray:
        """density on the closed support."""

    @abstractmethod
    def _d2(self, x: FloatArray) -> FloatArray:
        """derivative of the density on the closed support."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, n: int) -> FloatArray:
        """Draw ``n`` i.i.d. values, deterministically given the state of ``rng``."""

    def cdf(self, x: float | npt.ArrayLike) -> float | FloatArray:
        """F(x), exactly 0 at or below a and exactly 1 at or above b."""
        a, b = self.support
        x_arr = as_float_array(x)
        inside = np.clip(x_arr, a, b)
        values = np.where(x_arr <= a, 0.0, np.where(x_arr >= b, 1.0, self._cdf(inside)))
        return unwrap_scalar(values, x)

    def pdf(self, x: float | npt.ArrayLike) -> float | FloatArray:
        """F'(x) on [a, b], 0 outside."""
        a, b = self.support
        x_arr = as_float_array(x)
        inside = (x_arr >= a) & (x_arr <= b)
        values = np.where(inside, self._pdf(np.clip(x_arr, a, b)), 0.0)
        return unwrap_scalar(values, x)

    def d2(self, x: float | npt.ArrayLike) -> float | FloatArray:
        """F''(x) on [a, b], 0 outside."""
        a, b = self.support
        x_arr = as_float_array(x)
        inside = (x_arr >= a) & (x_arr <= b)
        values = np.where(inside, self._d2(np.clip(x_arr, a, b)), 0.0)
        return unwrap_scalar(values, x)

    def roughness(self, spec: QuadSpec = DEFAULT_QUAD) -> float:
        """int F''(x)^2 dx over the support."""
        a, b = self.support
        return integrate(lambda x: as_float_array(self.d2(x)) ** 2, a, b, spec=spec)

    def integrated_cdf_variance(self, spec: QuadSpec = DEFAULT_QUAD) -> float:
        """int F(x)(1 - F(x)) dx over the support."""
        a, b = self.support
        return integrate(lambda x: as_float_array(self.cdf(x)) * (1.0 - as_float_array(self.cdf(x))), a, b, spec=spec)

    def reflected_cdf(self, y: float | npt.ArrayLike) -> float | FloatArray:
        """cdf G of a + b - X, i.e. G(y) = 1 - F(a + b - y)."""
        a, b = self.support
        values = 1.0 - as_float_array(self.cdf(a + b - as_float_array(y)))
        return unwrap_scalar(values, y)


@dataclass(frozen=True)
class Uniform(Distribution):
    """Uniform distribution on [a, b]."""

    a: float = 0.0
    b: float = 1.0

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f'Uniform support must satisfy a < b, got [{self.a}, {self.b}]')

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    @property
    def kind(self) -> str:
        return 'uniform'

    @property
    def is_uniform(self) -> bool:
        return True

    def _cdf(self, x: FloatArray) -> FloatArray:
        return (x - self.a) / (self.b - self.a)

    def _pdf(self, x: FloatArray) -> FloatArray:
        return np.full_like(x, 1.0 / (self.b - self.a))

    def _d2(self, x: FloatArray) -> FloatArray:
        return np.zeros_like(x)

    def sample(self, rng: np.random.Generator, n: int) -> FloatArray:
        if n < 1:
            raise ValueError(f'sample size must be at least 1, not {n}')
        return self.a + (self.b - self.a) * rng.random(n)


@dataclass(frozen=True)
class BetaMixture(Distribution):
    """
    The mixture w B(1,2) + (1-w) B(2,b) on [0, 1].

    Attributes:
        w: weight of the B(1,2) component, in [0, 1]
        shape_b: second shape parameter of the B(2,b) component, at least 2
    """

    w: float
    shape_b: float = 2.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.w <= 1.0:
            raise ValueError(f'mixture weight must lie in [0, 1], got {self.w}')
        if self.shape_b < 2.0:
            raise OutOfFamilyError(f'shape parameter b must be at least 2, got {self.shape_b}')

    @property
    def support(self) -> tuple[float, float]:
        return (0.0, 1.0)

    @property
    def kind(self) -> str:
        return 'beta_mixture'

    def _cdf(self, x: FloatArray) -> FloatArray:
        b = self.shape_b
        beta_part = 1.0 - _one_minus_pow(x, b) * (1.0 + b * x)
        return self.w * (2.0 * x - x * x) + (1.0 - self.w) * beta_part

    def _pdf(self, x: FloatArray) -> FloatArray:
        b = self.shape_b
        return 2.0 * self.w * (1.0 - x) + (1.0 - self.w) * b * (b + 1.0) * x * _one_minus_pow(x, b - 1.0)

    def _d2(self, x: FloatArray) -> FloatArray:
        b = self.shape_b
        curvature = _one_minus_pow(x, b - 2.0) * ((1.0 - x) - (b - 1.0) * x)
        return -2.0 * self.w + (1.0 - self.w) * b * (b + 1.0) * curvature

    def _beta2b_cdf(self, x: float) -> float:
        b = self.shape_b
        return float(1.0 - _one_minus_pow(np.asarray(x, dtype=np.float64), b) * (1.0 + b * x))

    def sample(self, rng: np.random.Generator, n: int) -> FloatArray:
        """
        Draw the component labels, then invert the component cdf: B(1,2) analytically, B(2,b) by root finding.

        Two blocks of ``n`` uniforms are consumed from ``rng`` in that order.
        """
        if n < 1:
            raise ValueError(f'sample size must be at least 1, not {n}')
        from_first = rng.random(n) < self.w
        uniforms = rng.random(n)
        values = np.empty(n, dtype=np.float64)
        values[from_first] = 1.0 - np.sqrt(1.0 - uniforms[from_first])
        for i in np.flatnonzero(~from_first):
            target = float(uniforms[i])
            values[i] = find_root(lambda x: self._beta2b_cdf(x) - target, 0.0, 1.0)
        return values

    @property
    def d1_at_0(self) -> float:
        return 2.0 * self.w

    @property
    def d2_at_0(self) -> float:
        return -2.0 * self.w + (1.0 - self.w) * self.shape_b * (self.shape_b + 1.0)


def solve_params(target_d1: float, target_d2: float) -> BetaMixture:
    """
    The beta mixture with F'(0) = ``target_d1`` and F''(0) = ``target_d2``.

    w = target_d1 / 2 and b is the positive root of b (b+1) = (target_d2 + 2w) / (1 - w).

    Raises
    ------
    OutOfFamilyError
        If w = 1 (pure B(1,2), whose second derivative is fixed at -2), or the solved b is below 2.
    """
    if not 0.0 <= target_d1 < 2.0:
        raise OutOfFamilyError(f"F'(0) must lie in [0, 2) for a mixture with a B(2,b) component, got {target_d1}")
    if target_d2 <= 0.0:
        raise OutOfFamilyError(f"F''(0) must be positive, got {target_d2}")
    w = target_d1 / 2.0
    product = (target_d2 + 2.0 * w) / (1.0 - w)
    shape_b = (math.sqrt(1.0 + 4.0 * product) - 1.0) / 2.0
    if shape_b < 2.0:
        raise OutOfFamilyError(
            f"targets F'(0)={target_d1}, F''(0)={target_d2} need b={shape_b:.6g} < 2, outside the mixture family"
        )
    logger.debug(f'solved mixture for ({target_d1}, {target_d2}): w={w}, b={shape_b}')
    return BetaMixture(w=w, shape_b=shape_b)


def draw_sample(dist: Distribution, rng: np.random.Generator, n: int) -> Sample:
    """An i.i.d. sample of size ``n`` from ``dist``."""
    return Sample(dist.sample(rng, n))


def replicate_stream(seed: int, replicate: int) -> np.random.Generator:
    """
    The random stream of one replicate, derived from the master seed and the replicate index only.

    Replicate streams are therefore independent of how many replicates are run, and in which order.
    """
    if seed < 0 or replicate < 0:
        raise ValueError(f'seed and replicate index must be nonnegative, got ({seed}, {replicate})')
    return np.random.default_rng(np.random.SeedSequence([seed, replicate]))


def reference_mixtures() -> list[BetaMixture]:
    """The eight test mixtures with F'(0) in {0, 0.5, 1, 1.5} and F''(0) in {6, 30}."""
    return [solve_params(d1, d2) for d1 in mixture_d1_targets for d2 in mixture_d2_targets]
