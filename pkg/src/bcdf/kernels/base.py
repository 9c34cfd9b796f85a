"""
Symmetric base kernels on [-1, 1] with closed-form antiderivatives, partial moments and MISE constants.

All four kernels are of the form c * (1 - u^2)^p on [-1, 1], so every quantity used by the estimators is a
polynomial in u on the support and is evaluated from exact polynomial arithmetic.

MIT License
"""

import functools
import logging
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np
import numpy.typing as npt
from numpy.polynomial import Polynomial

from ..constants import kernel_names
from ..errors import UnsupportedOrderError
from ..utils import FloatArray, as_float_array, unwrap_scalar

logger = logging.getLogger(__name__)

KernelName = Literal['uniform', 'epanechnikov', 'biweight', 'triweight']

# K(u) = normaliser * (1 - u^2)^power on [-1, 1]
_KERNEL_SHAPES: dict[str, tuple[float, int]] = {
    'uniform': (1 / 2, 0),
    'epanechnikov': (3 / 4, 1),
    'biweight': (15 / 16, 2),
    'triweight': (35 / 32, 3),
}


class _KernelPolynomials(NamedTuple):
    density: Polynomial  # K on [-1, 1]
    half_mass: Polynomial  # int_0^u K, odd
    first: Polynomial  # int_{-1}^u v K(v) dv
    second: Polynomial  # int_{-1}^u v^2 K(v) dv


@functools.lru_cache(maxsize=None)
def _polynomials(name: str) -> _KernelPolynomials:
    normaliser, power = _KERNEL_SHAPES[name]
    u = Polynomial([0.0, 1.0])
    density = normaliser * (1 - u**2) ** power
    return _KernelPolynomials(
        density=density,
        half_mass=density.integ(lbnd=0),
        first=(u * density).integ(lbnd=-1),
        second=(u**2 * density).integ(lbnd=-1),
    )


@dataclass(frozen=True)
class BaseKernel:
    """
    A bounded, symmetric probability density with support [-1, 1].

    Attributes:
        name: one of 'uniform', 'epanechnikov', 'biweight', 'triweight'

    Examples:
        >>> BaseKernel('epanechnikov').density(0.0)
        0.75
        >>> BaseKernel('epanechnikov').antiderivative(0.5)
        0.84375
    """

    name: KernelName = 'epanechnikov'

    def __post_init__(self) -> None:
        if self.name not in kernel_names:
            raise ValueError(f'Unknown kernel {self.name!r}, expected one of {kernel_names}')

    @property
    def _poly(self) -> _KernelPolynomials:
        return _polynomials(self.name)

    def density(self, t: float | npt.ArrayLike) -> float | FloatArray:
        """K(t), zero outside [-1, 1]."""
        t_arr = as_float_array(t)
        inside = np.abs(t_arr) <= 1.0
        values = np.where(inside, self._poly.density(np.clip(t_arr, -1.0, 1.0)), 0.0)
        return unwrap_scalar(values, t)

    def half_mass(self, u: float | npt.ArrayLike) -> float | FloatArray:
        """int_0^u K(v) dv, an odd function equal to K(u) - 1/2. Free of cancellation near u = 0."""
        u_arr = as_float_array(u)
        return unwrap_scalar(self._poly.half_mass(np.clip(u_arr, -1.0, 1.0)), u)

    def antiderivative(self, u: float | npt.ArrayLike) -> float | FloatArray:
        """K(u) = int_{-inf}^u K(v) dv, exactly 0 below -1 and exactly 1 above +1."""
        u_arr = as_float_array(u)
        values = 0.5 + self._poly.half_mass(np.clip(u_arr, -1.0, 1.0))
        values = np.where(u_arr <= -1.0, 0.0, np.where(u_arr >= 1.0, 1.0, values))
        return unwrap_scalar(values, u)

    def partial_moment(self, order: int, alpha: float | npt.ArrayLike) -> float | FloatArray:
        """
        Partial moment mu_{k,alpha}(K) = int_{-1}^alpha u^k K(u) du for k in {0, 1, 2}.

        ``alpha`` is clipped to [-1, 1]; the order-0 moment is the antiderivative itself.

        Raises
        ------
        UnsupportedOrderError
            If ``order`` is not 0, 1 or 2.
        """
        if order == 0:
            return self.antiderivative(alpha)
        alpha_arr = np.clip(as_float_array(alpha), -1.0, 1.0)
        if order == 1:
            values = self._poly.first(alpha_arr)
        elif order == 2:
            values = self._poly.second(alpha_arr)
        else:
            raise UnsupportedOrderError(f'partial moments are available for orders 0, 1, 2, not {order}')
        return unwrap_scalar(np.asarray(values, dtype=np.float64), alpha)

    def b_product(self, u: float | npt.ArrayLike) -> float | FloatArray:
        """B(u) = 2 K(u) K(u), the weight of the variance expansion."""
        u_arr = as_float_array(u)
        values = 2.0 * as_float_array(self.antiderivative(u_arr)) * as_float_array(self.density(u_arr))
        return unwrap_scalar(values, u)

    def second_moment(self) -> float:
        """int u^2 K(u) du."""
        return float(self._poly.second(1.0))

    def r_constant(self) -> float:
        """
        int u B(u) du with B(u) = 2 K(u) K(u).

        Integration by parts over [-1, 1] gives 1 - int_{-1}^{1} K(u)^2 du, evaluated here from the polynomial
        form of K on the support.
        """
        kbar = 0.5 + self._poly.half_mass
        return float(1.0 - (kbar**2).integ(lbnd=-1)(1.0))

    def delta(self) -> float:
        """delta(K) = (int u B)^{1/3} (int u^2 K)^{-2/3}, the kernel factor of the optimal bandwidth."""
        return float(self.r_constant() ** (1 / 3) * self.second_moment() ** (-2 / 3))
