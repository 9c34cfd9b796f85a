from .exact import (
    MiseDecomposition,
    MiseTerms,
    PointwiseError,
    asymptotic_pointwise,
    exact_bias,
    exact_mise,
    exact_mise_decomposition,
    exact_mse_curve,
    exact_pointwise,
    exact_variance,
    mise_terms,
    optimal_bandwidth,
)

__all__ = [
    'MiseDecomposition',
    'MiseTerms',
    'PointwiseError',
    'asymptotic_pointwise',
    'exact_bias',
    'exact_mise',
    'exact_mise_decomposition',
    'exact_mse_curve',
    'exact_pointwise',
    'exact_variance',
    'mise_terms',
    'optimal_bandwidth',
]
