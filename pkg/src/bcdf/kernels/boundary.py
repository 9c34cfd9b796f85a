"""
Left boundary kernels K^L(.; alpha), their reflected right versions, moments and the coefficient functions of
the boundary bias and variance expansions.

Three families are built over a base kernel K:

- ``k1``: K restricted to [-alpha, alpha] and renormalised, a second-order kernel.
- ``k2``: K rescaled to [-alpha, alpha], a second-order kernel.
- ``k3``: alpha K on [-1, alpha] divided by (alpha mu_{0,alpha}(K) - mu_{1,alpha}(K)). It does not integrate to
  one, but satisfies alpha (1 - mu_0(alpha)) + mu_1(alpha) = 0, which is enough to remove the leading boundary
  bias.

Every method is vectorised over ``u`` and ``alpha`` with numpy broadcasting, so that an estimator can evaluate a
whole (grid x sample) matrix in one call.

MIT License
"""

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt
import pandas as pd

from ..constants import condition_tol, family_names, k1_conditioning_floor
from ..errors import DegenerateKernelError, DomainError, UnsupportedOrderError
from ..numerics import DEFAULT_QUAD, QuadSpec, integrate
from ..utils import FloatArray, as_float_array, unwrap_scalar
from .base import BaseKernel

logger = logging.getLogger(__name__)

FamilyName = Literal['k1', 'k2', 'k3']


def _check_alpha(alpha: FloatArray) -> None:
    if not np.all((alpha > 0.0) & (alpha < 1.0)):
        bad = alpha[~((alpha > 0.0) & (alpha < 1.0))]
        raise DomainError(f'boundary kernels are defined for alpha in (0, 1), got {bad.ravel()[:5]}')


@dataclass(frozen=True)
class BoundaryKernelFamily:
    """
    One of the left boundary kernel families over a base kernel.

    Attributes:
        variant: 'k1', 'k2' or 'k3'
        base: the symmetric base kernel K
    """

    variant: FamilyName
    base: BaseKernel = field(default_factory=BaseKernel)

    def __post_init__(self) -> None:
        if self.variant not in family_names:
            raise ValueError(f'Unknown boundary family {self.variant!r}, expected one of {family_names}')

    @property
    def label(self) -> str:
        return f'{self.variant}:{self.base.name}'

    def support(self, alpha: float | npt.ArrayLike) -> tuple[float | FloatArray, float | FloatArray]:
        """Support [lower, alpha] of K^L(.; alpha)."""
        alpha_arr = as_float_array(alpha)
        lower = -1.0 * np.ones_like(alpha_arr) if self.variant == 'k3' else -alpha_arr
        return unwrap_scalar(lower, alpha), unwrap_scalar(alpha_arr, alpha)

    def kinks(self, alpha: float) -> tuple[float, ...]:
        """Points where K^L(.; alpha) or its derivative may be discontinuous."""
        return (-1.0, -alpha, alpha)

    def normaliser(self, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """
        Normalising denominator of the family: 2K(alpha)-1 for k1, 1 for k2, alpha mu_{0,alpha} - mu_{1,alpha} for k3.

        Raises
        ------
        DegenerateKernelError
            If the normaliser is not strictly positive.
        """
        alpha_arr = as_float_array(alpha)
        _check_alpha(alpha_arr)
        return unwrap_scalar(self._normaliser(alpha_arr), alpha)

    def _normaliser(self, alpha: FloatArray) -> FloatArray:
        if self.variant == 'k1':
            value = 2.0 * as_float_array(self.base.half_mass(alpha))
            if np.any(value < k1_conditioning_floor):
                logger.warning(
                    f'k1 normaliser 2K(alpha)-1 fell below {k1_conditioning_floor} '
                    f'(min {float(np.min(value)):.3e}); boundary weights are badly conditioned'
                )
        elif self.variant == 'k2':
            value = np.ones_like(alpha)
        else:
            value = alpha * as_float_array(self.base.partial_moment(0, alpha)) - as_float_array(
                self.base.partial_moment(1, alpha)
            )
        if np.any(value <= 0.0):
            raise DegenerateKernelError(f'{self.label} normaliser is not positive for some alpha')
        return value

    def left_density(self, u: float | npt.ArrayLike, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """K^L(u; alpha), zero outside the support of the family."""
        u_arr, alpha_arr = as_float_array(u), as_float_array(alpha)
        _check_alpha(alpha_arr)
        norm = self._normaliser(alpha_arr)
        if self.variant == 'k1':
            values = np.where(np.abs(u_arr) <= alpha_arr, as_float_array(self.base.density(u_arr)) / norm, 0.0)
        elif self.variant == 'k2':
            values = as_float_array(self.base.density(u_arr / alpha_arr)) / alpha_arr
        else:
            values = np.where(u_arr <= alpha_arr, alpha_arr * as_float_array(self.base.density(u_arr)) / norm, 0.0)
        return unwrap_scalar(np.asarray(values, dtype=np.float64), u, alpha)

    def left_antiderivative(self, u: float | npt.ArrayLike, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """
        K^L(u; alpha) = int_{-inf}^u K^L(v; alpha) dv.

        Exactly 0 below the support and exactly mu_{0,L}(alpha) above it.
        """
        u_arr, alpha_arr = as_float_array(u), as_float_array(alpha)
        _check_alpha(alpha_arr)
        norm = self._normaliser(alpha_arr)
        if self.variant == 'k1':
            clipped = np.clip(u_arr, -alpha_arr, alpha_arr)
            half = as_float_array(self.base.half_mass(clipped)) + as_float_array(self.base.half_mass(alpha_arr))
            inner = half / norm
            values = np.where(u_arr <= -alpha_arr, 0.0, np.where(u_arr >= alpha_arr, 1.0, inner))
        elif self.variant == 'k2':
            values = as_float_array(self.base.antiderivative(u_arr / alpha_arr))
        else:
            clipped = np.minimum(u_arr, alpha_arr)
            values = alpha_arr * as_float_array(self.base.antiderivative(clipped)) / norm
        return unwrap_scalar(np.asarray(values, dtype=np.float64), u, alpha)

    def right_density(self, u: float | npt.ArrayLike, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """K^R(u; alpha) = K^L(-u; alpha)."""
        return self.left_density(np.negative(u), alpha)

    def right_antiderivative(self, u: float | npt.ArrayLike, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """K^R(u; alpha) = 1 - int_u^inf K^R(v; alpha) dv = 1 - K^L(-u; alpha)."""
        values = 1.0 - as_float_array(self.left_antiderivative(np.negative(u), alpha))
        return unwrap_scalar(values, u, alpha)

    def moment(self, order: int, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """
        mu_{k,L}(alpha) = int u^k K^L(u; alpha) du for k in {0, 1, 2}, from the closed-form partial moments of K.

        Raises
        ------
        UnsupportedOrderError
            If ``order`` is not 0, 1 or 2.
        """
        if order not in (0, 1, 2):
            raise UnsupportedOrderError(f'boundary moments are available for orders 0, 1, 2, not {order}')
        alpha_arr = as_float_array(alpha)
        _check_alpha(alpha_arr)
        if self.variant == 'k1':
            if order == 0:
                values = np.ones_like(alpha_arr)
            elif order == 1:
                values = np.zeros_like(alpha_arr)
            else:
                norm = self._normaliser(alpha_arr)
                values = (
                    as_float_array(self.base.partial_moment(2, alpha_arr))
                    - as_float_array(self.base.partial_moment(2, -alpha_arr))
                ) / norm
        elif self.variant == 'k2':
            full = (1.0, 0.0, self.base.second_moment())[order]
            values = alpha_arr**order * full
        else:
            norm = self._normaliser(alpha_arr)
            values = alpha_arr * as_float_array(self.base.partial_moment(order, alpha_arr)) / norm
        return unwrap_scalar(np.asarray(values, dtype=np.float64), alpha)

    def mu_bias_coeff(self, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """mu_L(alpha) = mu_{2,L}(alpha) - alpha mu_{1,L}(alpha), the h^2 coefficient of the boundary bias."""
        alpha_arr = as_float_array(alpha)
        values = as_float_array(self.moment(2, alpha_arr)) - alpha_arr * as_float_array(self.moment(1, alpha_arr))
        return unwrap_scalar(values, alpha)

    def b_product(self, u: float | npt.ArrayLike, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """B^L(u; alpha) = 2 K^L(u; alpha) K^L(u; alpha)."""
        values = 2.0 * as_float_array(self.left_antiderivative(u, alpha)) * as_float_array(self.left_density(u, alpha))
        return unwrap_scalar(values, u, alpha)

    def _m1_scalar(self, alpha: float, spec: QuadSpec) -> float:
        lower, upper = self.support(alpha)
        return integrate(
            lambda u: u * as_float_array(self.b_product(u, alpha)),
            float(lower),
            float(upper),
            spec=spec,
            points=self.kinks(alpha),
        )

    def m1(self, alpha: float | npt.ArrayLike, spec: QuadSpec = DEFAULT_QUAD) -> float | FloatArray:
        """m_{1,L}(alpha) = int u B^L(u; alpha) du, by quadrature over the support."""
        alpha_arr = as_float_array(alpha)
        _check_alpha(alpha_arr)
        values = np.array([self._m1_scalar(float(a), spec) for a in alpha_arr.ravel()]).reshape(alpha_arr.shape)
        return unwrap_scalar(values, alpha)

    def m1_by_parts(self, alpha: float, spec: QuadSpec = DEFAULT_QUAD) -> float:
        """
        m_{1,L}(alpha) through integration by parts:
        alpha mu_{0,L}(alpha)^2 - int Kbar^L(u; alpha)^2 du over the support.

        An independent route to :meth:`m1`, used to cross-check it.
        """
        lower, upper = self.support(alpha)
        squared = integrate(
            lambda u: as_float_array(self.left_antiderivative(u, alpha)) ** 2,
            float(lower),
            float(upper),
            spec=spec,
            points=self.kinks(alpha),
        )
        return float(upper) * float(self.moment(0, alpha)) ** 2 - squared

    def nu_var_coeff(self, alpha: float | npt.ArrayLike, spec: QuadSpec = DEFAULT_QUAD) -> float | FloatArray:
        """nu_L(alpha) = m_{1,L}(alpha) + alpha (1 - mu_{0,L}(alpha)^2), the h/n coefficient of the variance."""
        alpha_arr = as_float_array(alpha)
        values = as_float_array(self.m1(alpha_arr, spec)) + alpha_arr * (
            1.0 - as_float_array(self.moment(0, alpha_arr)) ** 2
        )
        return unwrap_scalar(values, alpha)

    def check_conditions(self, alphas: npt.ArrayLike, tol: float = condition_tol) -> pd.DataFrame:
        """
        Check the second-order condition (mass one, zero mean) and the weaker condition
        alpha (1 - mu_0) + mu_1 = 0 on a grid of alphas.

        Returns
        -------
        pd.DataFrame
            One row per alpha with the residuals and boolean columns ``c1`` and ``c2``.
        """
        alpha_arr = np.atleast_1d(as_float_array(alphas))
        mu0 = as_float_array(self.moment(0, alpha_arr))
        mu1 = as_float_array(self.moment(1, alpha_arr))
        c2_residual = alpha_arr * (1.0 - mu0) + mu1
        report = pd.DataFrame(
            {
                'alpha': alpha_arr,
                'mass_residual': mu0 - 1.0,
                'mean_residual': mu1,
                'c2_residual': c2_residual,
            }
        )
        report['c1'] = (report['mass_residual'].abs() <= tol) & (report['mean_residual'].abs() <= tol)
        report['c2'] = report['c2_residual'].abs() <= tol
        report.insert(0, 'family', self.variant)
        report.insert(1, 'kernel', self.base.name)
        holds = f'c1 holds on {int(report["c1"].sum())}/{len(report)}, c2 on {int(report["c2"].sum())}'
        logger.debug(f'{self.label}: {holds}')
        return report

    def coefficient_table(self, alphas: npt.ArrayLike, spec: QuadSpec = DEFAULT_QUAD) -> pd.DataFrame:
        """mu_L, mu_L^2, nu_L and -nu_L over a grid of alphas."""
        alpha_arr = np.atleast_1d(as_float_array(alphas))
        mu = as_float_array(self.mu_bias_coeff(alpha_arr))
        nu = as_float_array(self.nu_var_coeff(alpha_arr, spec))
        return pd.DataFrame(
            {
                'family': self.variant,
                'kernel': self.base.name,
                'alpha': alpha_arr,
                'mu_L': mu,
                'mu_L_sq': mu**2,
                'nu_L': nu,
                'minus_nu_L': -nu,
            }
        )

    def kernel_table(self, alpha: float, grid: npt.ArrayLike) -> pd.DataFrame:
        """K^L(u; alpha) and its antiderivative on a grid of u values."""
        u = np.atleast_1d(as_float_array(grid))
        return pd.DataFrame(
            {
                'family': self.variant,
                'kernel': self.base.name,
                'alpha': alpha,
                'u': u,
                'density': as_float_array(self.left_density(u, alpha)),
                'antiderivative': as_float_array(self.left_antiderivative(u, alpha)),
            }
        )

    def squared_mass_integral(self, spec: QuadSpec = DEFAULT_QUAD) -> float:
        """int_0^1 mu_{0,L}(alpha)^2 d alpha, finite for every admissible family."""
        return integrate(lambda a: as_float_array(self.moment(0, a)) ** 2, 0.0, 1.0, spec=spec)
