from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate as sp_integrate

import bcdf as bc
from bcdf.errors import UnsupportedOrderError


def _quad(f, lo: float, hi: float) -> float:
    value, _ = sp_integrate.quad(f, lo, hi, epsabs=1e-14, epsrel=1e-13, limit=200)
    return value


def test_BaseKernel_rejects_unknown_name() -> None:
    with pytest.raises(ValueError):
        bc.BaseKernel('gaussian')  # type: ignore[arg-type]


def test_BaseKernel_density_values_of_epanechnikov(epanechnikov: bc.BaseKernel) -> None:
    assert epanechnikov.density(0.0) == pytest.approx(0.75, abs=1e-15)
    assert epanechnikov.density(1.0) == 0.0
    assert epanechnikov.density(1.5) == 0.0
    assert epanechnikov.density(-3.0) == 0.0


def test_BaseKernel_density_is_vectorised(any_kernel: bc.BaseKernel) -> None:
    u = np.linspace(-1.5, 1.5, 31)
    values = any_kernel.density(u)
    assert isinstance(values, np.ndarray) and values.shape == u.shape
    assert np.all(values >= 0.0)
    assert np.allclose(values, any_kernel.density(-u), atol=1e-15), 'kernel is not symmetric'


def test_BaseKernel_integrates_to_one(any_kernel: bc.BaseKernel) -> None:
    assert _quad(any_kernel.density, -1.0, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_BaseKernel_antiderivative_values_of_epanechnikov(epanechnikov: bc.BaseKernel) -> None:
    assert epanechnikov.antiderivative(0.0) == 0.5
    assert epanechnikov.antiderivative(0.5) == pytest.approx(0.84375, abs=1e-15)
    assert epanechnikov.antiderivative(-1.0) == 0.0
    assert epanechnikov.antiderivative(1.0) == 1.0


def test_BaseKernel_antiderivative_is_exactly_zero_and_one_outside_support(any_kernel: bc.BaseKernel) -> None:
    assert any_kernel.antiderivative(-2.0) == 0.0
    assert any_kernel.antiderivative(2.0) == 1.0
    values = any_kernel.antiderivative(np.array([-5.0, -1.0, 1.0, 5.0]))
    assert list(values) == [0.0, 0.0, 1.0, 1.0]


def test_BaseKernel_antiderivative_matches_quadrature(any_kernel: bc.BaseKernel) -> None:
    for u in np.linspace(-0.95, 0.95, 20):
        expected = _quad(any_kernel.density, -1.0, u)
        assert any_kernel.antiderivative(u) == pytest.approx(expected, abs=1e-12)


def test_BaseKernel_antiderivative_is_nondecreasing(any_kernel: bc.BaseKernel) -> None:
    values = any_kernel.antiderivative(np.linspace(-1.2, 1.2, 2001))
    assert np.all(np.diff(values) >= -1e-15)


def test_BaseKernel_half_mass_is_odd_and_small_near_zero(epanechnikov: bc.BaseKernel) -> None:
    assert epanechnikov.half_mass(1e-9) == pytest.approx(0.75e-9, rel=1e-12)
    assert epanechnikov.half_mass(-0.3) == pytest.approx(-epanechnikov.half_mass(0.3), abs=1e-16)


def test_BaseKernel_partial_moments_match_quadrature(any_kernel: bc.BaseKernel) -> None:
    for order in (0, 1, 2):
        for alpha in (-0.7, 0.0, 0.3, 0.99):
            expected = _quad(lambda u: u**order * any_kernel.density(u), -1.0, alpha)
            assert any_kernel.partial_moment(order, alpha) == pytest.approx(expected, abs=1e-12)


def test_BaseKernel_first_partial_moment_at_full_support_is_zero(any_kernel: bc.BaseKernel) -> None:
    assert any_kernel.partial_moment(1, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_BaseKernel_partial_moment_rejects_order_three(epanechnikov: bc.BaseKernel) -> None:
    with pytest.raises(UnsupportedOrderError):
        epanechnikov.partial_moment(3, 0.5)


def test_BaseKernel_second_moments_have_closed_forms() -> None:
    expected = {'uniform': 1 / 3, 'epanechnikov': 1 / 5, 'biweight': 1 / 7, 'triweight': 1 / 9}
    for name, value in expected.items():
        assert bc.BaseKernel(name).second_moment() == pytest.approx(value, abs=1e-15)  # type: ignore[arg-type]


def test_BaseKernel_r_constant_of_epanechnikov_is_9_over_35(epanechnikov: bc.BaseKernel) -> None:
    assert epanechnikov.r_constant() == pytest.approx(float(Fraction(9, 35)), abs=1e-12)


def test_BaseKernel_r_constant_of_uniform_is_one_third(uniform_kernel: bc.BaseKernel) -> None:
    assert uniform_kernel.r_constant() == pytest.approx(1 / 3, abs=1e-12)


def test_BaseKernel_r_constant_matches_quadrature_of_u_times_b(any_kernel: bc.BaseKernel) -> None:
    expected = _quad(lambda u: u * any_kernel.b_product(u), -1.0, 1.0)
    assert any_kernel.r_constant() == pytest.approx(expected, abs=1e-12)
    assert any_kernel.r_constant() > 0.0


def test_BaseKernel_delta_closed_forms(epanechnikov: bc.BaseKernel, uniform_kernel: bc.BaseKernel) -> None:
    assert epanechnikov.delta() == pytest.approx((45 / 7) ** (1 / 3), abs=1e-12)
    assert uniform_kernel.delta() == pytest.approx(3 ** (1 / 3), abs=1e-12)
    assert epanechnikov.delta() == pytest.approx(1.859394, abs=1e-6)


def test_BaseKernel_b_product_vanishes_outside_support(any_kernel: bc.BaseKernel) -> None:
    assert any_kernel.b_product(1.2) == 0.0
    assert any_kernel.b_product(-1.2) == 0.0
