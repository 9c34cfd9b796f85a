"""
bcdf
-------

Boundary-corrected kernel estimation of distribution functions on a known finite support, with exact
finite-sample bias/variance formulas, MISE-optimal bandwidths and a Monte Carlo harness for integrated
squared errors.
"""

from .utils import get_version_from_pyproject

__version__ = get_version_from_pyproject()

from . import constants, errors, numerics
from .kernels import BaseKernel, BoundaryKernelFamily
from .distributions import BetaMixture, Distribution, Uniform
from .estimator import EstimatorConfig, Sample
from .simulation import SimConfig, SimResult
from . import analysis, estimator, distributions, kernels, simulation


__all__ = [
    'BaseKernel',
    'BoundaryKernelFamily',
    'BetaMixture',
    'Distribution',
    'Uniform',
    'EstimatorConfig',
    'Sample',
    'SimConfig',
    'SimResult',
    'analysis',
    'constants',
    'distributions',
    'errors',
    'estimator',
    'kernels',
    'numerics',
    'simulation',
]
