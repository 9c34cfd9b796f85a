"""
Exact finite-sample error of the estimators, its small-bandwidth expansion and the MISE optimal bandwidth.

For an estimator (1/n) sum_i W((x - X_i)/h) with weight W = int K_x, integration by parts gives

    E  = int F(x - u h) K_x(u) du
    nV = int F(x - u h) 2 W(u) K_x(u) du - E^2

with K_x the left boundary kernel in (a, a + h), K itself on [a + h, b - h] and for the classical estimator.
The right strip is handled by reflecting F about the centre of the support.

MIT License
"""

import logging
import math
from typing import Any, Callable, Literal

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..distributions import Distribution
from ..errors import NoOptimalBandwidthError
from ..estimator import EstimatorConfig
from ..kernels import BaseKernel, BoundaryKernelFamily
from ..numerics import DEFAULT_QUAD, QuadSpec, integrate
from ..utils import FloatArray, as_float_array, unwrap_scalar

logger = logging.getLogger(__name__)

CdfFunction = Callable[[FloatArray], npt.ArrayLike]

# slack allowed on quadrature variances before they are reported as negative
_VARIANCE_SLACK = 1e-12


class PointwiseError(BaseModel):
    """
    Bias, variance and mean squared error of an estimator at one point.

    ``kind`` is 'exact' for the finite-sample values and 'asymptotic' for the leading terms of their expansion in h.
    The variance is that of the estimate from ``n`` observations.
    """

    model_config = ConfigDict(frozen=True)

    x: float
    bias: float
    variance: float
    mse: float
    n: int = Field(default=1, ge=1)
    kind: Literal['exact', 'asymptotic'] = 'exact'

    @model_validator(mode='before')
    @classmethod
    def _fill_mse(cls, data: Any) -> Any:
        if isinstance(data, dict) and 'mse' not in data:
            data = dict(data)
            data['mse'] = data['variance'] + data['bias'] ** 2
        return data

    @model_validator(mode='after')
    def _check_decomposition(self) -> 'PointwiseError':
        if self.kind == 'exact' and self.variance < -_VARIANCE_SLACK:
            raise ValueError(f'exact variance must be nonnegative, got {self.variance} at x={self.x}')
        expected = self.variance + self.bias**2
        assert math.isclose(self.mse, expected, rel_tol=1e-14, abs_tol=1e-300), (
            f'mse {self.mse} does not equal variance + bias^2 = {expected}'
        )
        return self


class MiseTerms(BaseModel):
    """
    Leading terms of the MISE expansion v0 - h v1 / n + b4 h^4 and the bandwidth h0 minimising it.

    Attributes:
        v0: (1/n) int F(1 - F)
        v1: int u B(u) du of the base kernel
        b4: (int u^2 K)^2 / 4 * int F''^2
        h0: delta(K) (int F''^2)^{-1/3} n^{-1/3}
        delta_k: delta(K)
        n: sample size
        roughness: int F''^2
    """

    model_config = ConfigDict(frozen=True)

    v0: float
    v1: float = Field(gt=0)
    b4: float = Field(ge=0)
    h0: float = Field(gt=0)
    delta_k: float = Field(gt=0)
    n: int = Field(ge=1)
    roughness: float = Field(gt=0)

    def leading_variance(self, h: float | npt.ArrayLike) -> float | FloatArray:
        """v0 - h v1 / n."""
        return unwrap_scalar(self.v0 - as_float_array(h) * self.v1 / self.n, h)

    def leading_sq_bias(self, h: float | npt.ArrayLike) -> float | FloatArray:
        """b4 h^4."""
        return unwrap_scalar(self.b4 * as_float_array(h) ** 4, h)

    def expansion(self, h: float | npt.ArrayLike) -> float | FloatArray:
        """v0 - h v1 / n + b4 h^4."""
        values = as_float_array(self.leading_variance(h)) + as_float_array(self.leading_sq_bias(h))
        return unwrap_scalar(values, h)


class MiseDecomposition(BaseModel):
    """Integrated variance and integrated squared bias over a region, and their sum."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float
    integrated_variance: float
    integrated_sq_bias: float = Field(ge=0)
    mise: float

    @field_validator('integrated_variance')
    @classmethod
    def _variance_not_negative(cls, value: float) -> float:
        if value < -_VARIANCE_SLACK:
            raise ValueError(f'integrated variance must be nonnegative, got {value}')
        return value


def _moments(
    cdf: CdfFunction,
    x: float,
    h: float,
    density: Callable[[FloatArray], npt.ArrayLike],
    weight: Callable[[FloatArray], npt.ArrayLike],
    support: tuple[float, float],
    kinks: tuple[float, ...],
    spec: QuadSpec,
) -> tuple[float, float]:
    """
    (E, n Var) of (1/n) sum_i weight((x - X_i)/h) when ``weight`` has derivative ``density`` on ``support``.

    The kinks of F(x - u h) at u = (x - a)/h and (x - b)/h must be included in ``kinks``.
    """
    lower, upper = support

    def values_at(u: FloatArray) -> FloatArray:
        return as_float_array(cdf(x - u * h))

    expectation = integrate(lambda u: values_at(u) * as_float_array(density(u)), lower, upper, spec=spec, points=kinks)
    second = integrate(
        lambda u: values_at(u) * 2.0 * as_float_array(weight(u)) * as_float_array(density(u)),
        lower,
        upper,
        spec=spec,
        points=kinks,
    )
    return expectation, second - expectation**2


def _interior_moments(
    cdf: CdfFunction, a: float, b: float, base: BaseKernel, h: float, x: float, spec: QuadSpec
) -> tuple[float, float]:
    kinks = (-1.0, 1.0, (x - a) / h, (x - b) / h)
    return _moments(cdf, x, h, base.density, base.antiderivative, (-1.0, 1.0), kinks, spec)


def _left_moments(
    cdf: CdfFunction, a: float, b: float, family: BoundaryKernelFamily, h: float, alpha: float, spec: QuadSpec
) -> tuple[float, float]:
    x = a + alpha * h
    lower, upper = family.support(alpha)
    kinks = family.kinks(alpha) + ((x - b) / h,)
    return _moments(
        cdf,
        x,
        h,
        lambda u: family.left_density(u, alpha),
        lambda u: family.left_antiderivative(u, alpha),
        (float(lower), float(upper)),
        kinks,
        spec,
    )


def _left_error(
    cdf: CdfFunction, a: float, b: float, family: BoundaryKernelFamily, h: float, alpha: float, spec: QuadSpec
) -> tuple[float, float]:
    """(bias, n Var) of the boundary estimator at a + alpha h."""
    expectation, n_var = _left_moments(cdf, a, b, family, h, alpha, spec)
    return expectation - float(as_float_array(cdf(np.array(a + alpha * h)))), n_var


def _pointwise(d: Distribution, cfg: EstimatorConfig, x: float, spec: QuadSpec) -> tuple[float, float]:
    """(bias, n Var) of the estimator of ``cfg`` at any real x."""
    a, b, h = cfg.a, cfg.b, cfg.h
    if cfg.family is None:
        expectation, n_var = _interior_moments(d.cdf, a, b, cfg.base, h, x, spec)
        return expectation - float(d.cdf(x)), n_var
    if x <= a or x >= b:
        return 0.0, 0.0
    alpha, beta = (x - a) / h, (b - x) / h
    if alpha < 1.0:
        return _left_error(d.cdf, a, b, cfg.family, h, alpha, spec)
    if beta < 1.0:
        # Y = a + b - X has cdf G(y) = 1 - F(a + b - y); the right strip of F is the left strip of G
        bias, n_var = _left_error(d.reflected_cdf, a, b, cfg.family, h, beta, spec)
        return -bias, n_var
    expectation, n_var = _interior_moments(d.cdf, a, b, cfg.base, h, x, spec)
    return expectation - float(d.cdf(x)), n_var


def _check_support(d: Distribution, cfg: EstimatorConfig) -> None:
    if d.support != (cfg.a, cfg.b):
        raise ValueError(f'estimator support [{cfg.a}, {cfg.b}] differs from the distribution support {d.support}')


def _require_family(cfg: EstimatorConfig) -> BoundaryKernelFamily:
    if cfg.family is None:
        raise ValueError('boundary error formulas need a boundary kernel family, got the classical estimator')
    return cfg.family


def exact_bias(d: Distribution, cfg: EstimatorConfig, alpha: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
    """
    E F_est(a + alpha h) - F(a + alpha h) in the left boundary strip, for 0 < alpha < 1.

    The bias does not depend on the sample size.
    """
    _check_support(d, cfg)
    family = _require_family(cfg)
    bias, _ = _left_error(d.cdf, cfg.a, cfg.b, family, cfg.h, alpha, spec)
    return bias


def exact_variance(
    d: Distribution, cfg: EstimatorConfig, alpha: float, n: int, spec: QuadSpec = DEFAULT_QUAD
) -> float:
    """Var F_est(a + alpha h) from ``n`` observations, in the left boundary strip."""
    if n < 1:
        raise ValueError(f'sample size must be at least 1, not {n}')
    _check_support(d, cfg)
    family = _require_family(cfg)
    _, n_var = _left_moments(d.cdf, cfg.a, cfg.b, family, cfg.h, alpha, spec)
    assert n_var >= -_VARIANCE_SLACK, f'negative variance {n_var} at alpha={alpha}'
    return n_var / n


def exact_pointwise(
    d: Distribution, cfg: EstimatorConfig, x: float, n: int, spec: QuadSpec = DEFAULT_QUAD
) -> PointwiseError:
    """
    Exact error of the estimator of ``cfg`` at any real ``x``.

    The boundary estimator has no error outside (a, b). The classical estimator (``cfg.family`` None) is handled on
    the whole real line.
    """
    _check_support(d, cfg)
    bias, n_var = _pointwise(d, cfg, float(x), spec)
    return PointwiseError(x=x, bias=bias, variance=n_var / n, n=n, kind='exact')


def exact_mse_curve(
    d: Distribution, cfg: EstimatorConfig, n: int, alphas: npt.ArrayLike, spec: QuadSpec = DEFAULT_QUAD
) -> list[PointwiseError]:
    """Exact errors at x = a + alpha h for each alpha of the left boundary strip."""
    _check_support(d, cfg)
    family = _require_family(cfg)
    records = []
    for alpha in np.atleast_1d(as_float_array(alphas)):
        bias, n_var = _left_error(d.cdf, cfg.a, cfg.b, family, cfg.h, float(alpha), spec)
        records.append(PointwiseError(x=cfg.a + float(alpha) * cfg.h, bias=bias, variance=n_var / n, n=n))
    logger.debug(f'{family.label}: exact MSE at {len(records)} alphas, h={cfg.h}, n={n}')
    return records


def asymptotic_pointwise(
    d: Distribution, family: BoundaryKernelFamily, h: float, alpha: float, n: int = 1
) -> PointwiseError:
    """
    Leading terms of the bias and variance at x = a + alpha h:

        bias = (h^2 / 2) F''(x) mu_L(alpha)
        n Var = F(x)(1 - F(x)) - h F'(x) nu_L(alpha)

    With the default ``n=1`` the variance is the n-free quantity n Var.
    """
    a, _ = d.support
    x = a + alpha * h
    cdf_x = float(d.cdf(x))
    bias = 0.5 * h**2 * float(d.d2(x)) * float(family.mu_bias_coeff(alpha))
    n_var = cdf_x * (1.0 - cdf_x) - h * float(d.pdf(x)) * float(family.nu_var_coeff(alpha))
    return PointwiseError(x=x, bias=bias, variance=n_var / n, n=n, kind='asymptotic')


def mise_terms(d: Distribution, base: BaseKernel, n: int, spec: QuadSpec = DEFAULT_QUAD) -> MiseTerms:
    """
    Coefficients of the MISE expansion and the optimal bandwidth h0.

    Raises
    ------
    NoOptimalBandwidthError
        If F is uniform on its support (int F''^2 = 0), where the MISE has no interior minimum in h.
    """
    if n < 1:
        raise ValueError(f'sample size must be at least 1, not {n}')
    if d.is_uniform:
        raise NoOptimalBandwidthError(
            f'no optimal bandwidth exists for a uniform distribution ({d.kind} on {d.support} has int F\'\'^2 = 0)'
        )
    roughness = d.roughness(spec)
    delta_k = base.delta()
    terms = MiseTerms(
        v0=d.integrated_cdf_variance(spec) / n,
        v1=base.r_constant(),
        b4=base.second_moment() ** 2 / 4.0 * roughness,
        h0=delta_k * roughness ** (-1 / 3) * n ** (-1 / 3),
        delta_k=delta_k,
        n=n,
        roughness=roughness,
    )
    logger.debug(f'MISE terms for {d}, {base.name}, n={n}: {terms}')
    return terms


def optimal_bandwidth(d: Distribution, base: BaseKernel, n: int) -> float:
    """The asymptotically MISE optimal bandwidth h0."""
    return mise_terms(d, base, n).h0


def _integrate_pointwise(
    d: Distribution, cfg: EstimatorConfig, n: int, region: tuple[float, float], spec: QuadSpec
) -> tuple[float, float]:
    lo, hi = float(region[0]), float(region[1])
    a, b = cfg.a, cfg.b
    if not a <= lo <= hi <= b:
        raise ValueError(f'region [{lo}, {hi}] must lie inside the support [{a}, {b}]')
    cache: dict[float, tuple[float, float]] = {}

    def components(x: FloatArray) -> FloatArray:
        out = np.empty((2, x.size), dtype=np.float64)
        for i, xi in enumerate(x.ravel()):
            key = float(xi)
            if key not in cache:
                cache[key] = _pointwise(d, cfg, key, spec)
            out[:, i] = cache[key]
        return out

    points = (a + cfg.h, b - cfg.h)
    sq_bias = integrate(lambda x: components(x)[0] ** 2, lo, hi, spec=spec, points=points)
    n_var = integrate(lambda x: components(x)[1], lo, hi, spec=spec, points=points)
    return n_var / n, sq_bias


def exact_mise_decomposition(
    d: Distribution,
    cfg: EstimatorConfig,
    n: int,
    region: tuple[float, float] | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
) -> MiseDecomposition:
    """
    Integrated variance and squared bias of the pointwise exact errors over ``region`` (the whole support by default).

    Panels are split at a + h and b - h, where the estimator switches kernels.
    """
    _check_support(d, cfg)
    lo, hi = (cfg.a, cfg.b) if region is None else region
    variance, sq_bias = _integrate_pointwise(d, cfg, n, (lo, hi), spec)
    logger.debug(f'{cfg.label}: h={cfg.h}, n={n}, [{lo}, {hi}]: variance={variance}, squared bias={sq_bias}')
    return MiseDecomposition(
        lo=lo, hi=hi, integrated_variance=variance, integrated_sq_bias=sq_bias, mise=variance + sq_bias
    )


def exact_mise(
    d: Distribution,
    cfg: EstimatorConfig,
    n: int,
    region: tuple[float, float] | None = None,
    spec: QuadSpec = DEFAULT_QUAD,
) -> float:
    """E int_region (F_est - F)^2 dx."""
    return exact_mise_decomposition(d, cfg, n, region, spec).mise
