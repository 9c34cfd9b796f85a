"""
Agreement between the exact finite-sample errors and their small-bandwidth expansions.

The checks are ratio tests over decreasing bandwidths, since the expansions only state rates.
"""

import numpy as np
import pytest

import bcdf as bc
from bcdf.analysis import asymptotic_pointwise, exact_bias, exact_mise_decomposition, exact_variance, mise_terms

BANDWIDTHS = (0.2, 0.1, 0.05)
ALPHAS = np.arange(1, 20) / 20


def _config(family: bc.BoundaryKernelFamily, h: float) -> bc.EstimatorConfig:
    return bc.EstimatorConfig(a=0.0, b=1.0, h=h, base=family.base, family=family)


def _bias_gap(dist: bc.Distribution, family: bc.BoundaryKernelFamily, h: float) -> float:
    cfg = _config(family, h)
    gaps = [abs(exact_bias(dist, cfg, alpha) - asymptotic_pointwise(dist, family, h, alpha).bias) for alpha in ALPHAS]
    return max(gaps) / h**2


def _variance_gap(dist: bc.Distribution, family: bc.BoundaryKernelFamily, h: float) -> float:
    cfg = _config(family, h)
    gaps = [
        abs(exact_variance(dist, cfg, alpha, 1) - asymptotic_pointwise(dist, family, h, alpha).variance)
        for alpha in ALPHAS
    ]
    return max(gaps) / h**2


@pytest.mark.slow
def test_boundary_bias_is_second_order_with_leading_coefficient(
    steep_mixture: bc.BetaMixture, any_family: bc.BoundaryKernelFamily
) -> None:
    gaps = [_bias_gap(steep_mixture, any_family, h) for h in BANDWIDTHS]
    assert gaps[0] > gaps[1] > gaps[2], f'{any_family.variant}: bias remainder is not o(h^2): {gaps}'


@pytest.mark.slow
def test_boundary_variance_remainder_is_of_order_h_squared(
    steep_mixture: bc.BetaMixture, any_family: bc.BoundaryKernelFamily
) -> None:
    gaps = [_variance_gap(steep_mixture, any_family, h) for h in BANDWIDTHS]
    assert max(gaps) <= 3 * min(gaps), f'{any_family.variant}: variance remainder is not O(h^2): {gaps}'


@pytest.mark.slow
def test_integrated_squared_bias_matches_leading_term(
    beta22: bc.BetaMixture, any_family: bc.BoundaryKernelFamily
) -> None:
    n = 50
    terms = mise_terms(beta22, any_family.base, n)
    gaps = []
    for h in BANDWIDTHS:
        exact = exact_mise_decomposition(beta22, _config(any_family, h), n)
        gaps.append(abs(exact.integrated_sq_bias - float(terms.leading_sq_bias(h))) / h**4)
    assert gaps[0] > gaps[1] > gaps[2], f'{any_family.variant}: squared bias remainder is not o(h^4): {gaps}'


@pytest.mark.slow
def test_integrated_variance_matches_leading_terms(
    beta22: bc.BetaMixture, any_family: bc.BoundaryKernelFamily
) -> None:
    n = 50
    terms = mise_terms(beta22, any_family.base, n)
    gaps = []
    for h in BANDWIDTHS:
        exact = exact_mise_decomposition(beta22, _config(any_family, h), n)
        gaps.append(abs(n * exact.integrated_variance - n * float(terms.leading_variance(h))) / h**2)
    assert max(gaps) <= 3 * min(gaps), f'{any_family.variant}: variance remainder is not O(h^2/n): {gaps}'


@pytest.mark.slow
def test_variance_slope_at_zero_bandwidth_is_minus_r_constant(
    beta22: bc.BetaMixture, epanechnikov: bc.BaseKernel
) -> None:
    n = 50
    family = bc.BoundaryKernelFamily('k2', epanechnikov)
    terms = mise_terms(beta22, epanechnikov, n)

    def slope(h: float) -> float:
        exact = exact_mise_decomposition(beta22, _config(family, h), n)
        return n * (exact.integrated_variance - terms.v0) / h

    # Richardson extrapolation of the difference quotient, whose error is linear in h
    extrapolated = 2 * slope(0.05) - slope(0.1)
    assert extrapolated == pytest.approx(-terms.v1, rel=0.05)
