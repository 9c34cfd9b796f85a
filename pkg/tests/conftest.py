"""Module used to configure pytest behaviour."""

import numpy as np
import pytest

import bcdf as bc
from bcdf.distributions import reference_mixtures, solve_params


def pytest_addoption(parser):
    """Globally adds flag to pytest command line call. Used to choose the size of the Monte Carlo acceptance runs."""
    parser.addoption(
        '--simulation',
        action='store',
        default='reduced',
        help='Size of the ISE simulation tests. options: reduced (fewer replicates) or full (500 replicates)',
        choices=('reduced', 'full'),
    )


"""
### PyTest Fixtures ###

These are imported implicitly in all test_*.py modules when pytest is called in the terminal.
"""


@pytest.fixture(scope='session')
def simulation_reps(request) -> int:
    """Number of replicates used by the Monte Carlo acceptance tests, set by the --simulation flag."""
    flag = request.config.getoption('--simulation')
    if flag == 'full':
        return 500
    elif flag == 'reduced':
        return 100
    else:
        raise ValueError(f'Unknown --simulation flag: {flag}')


@pytest.fixture
def epanechnikov() -> bc.BaseKernel:
    return bc.BaseKernel('epanechnikov')


@pytest.fixture
def uniform_kernel() -> bc.BaseKernel:
    return bc.BaseKernel('uniform')


@pytest.fixture(params=['uniform', 'epanechnikov', 'biweight', 'triweight'])
def any_kernel(request) -> bc.BaseKernel:
    return bc.BaseKernel(request.param)


@pytest.fixture(params=['k1', 'k2', 'k3'])
def any_family(request, epanechnikov: bc.BaseKernel) -> bc.BoundaryKernelFamily:
    return bc.BoundaryKernelFamily(request.param, epanechnikov)


@pytest.fixture
def k3(epanechnikov: bc.BaseKernel) -> bc.BoundaryKernelFamily:
    return bc.BoundaryKernelFamily('k3', epanechnikov)


@pytest.fixture
def beta22() -> bc.BetaMixture:
    """Beta(2,2), i.e. the mixture with w=0 and b=2."""
    return bc.BetaMixture(w=0.0, shape_b=2.0)


@pytest.fixture
def steep_mixture() -> bc.BetaMixture:
    """The mixture with F'(0)=1.5 and F''(0)=6, i.e. w=0.75 and b=5."""
    return solve_params(1.5, 6.0)


@pytest.fixture
def uniform_dist() -> bc.Uniform:
    return bc.Uniform(0.0, 1.0)


@pytest.fixture
def test_mixtures() -> list[bc.BetaMixture]:
    return reference_mixtures()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def beta22_sample(beta22: bc.BetaMixture, rng: np.random.Generator) -> bc.Sample:
    return bc.Sample(beta22.sample(rng, 50))
