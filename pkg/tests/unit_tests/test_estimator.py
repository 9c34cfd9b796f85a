import numpy as np
import pytest

import bcdf as bc
from bcdf.errors import SampleOutOfSupportError
from bcdf.estimator import boundary_cdf, classical_cdf, evaluate_grid, is_proper, sup_distance


@pytest.fixture
def k3_config() -> bc.EstimatorConfig:
    return bc.EstimatorConfig.from_names(0.0, 1.0, 0.2, 'epanechnikov', 'k3')


def test_Sample_is_sorted_and_read_only() -> None:
    sample = bc.Sample(np.array([0.7, 0.1, 0.4]))
    assert list(sample.values) == [0.1, 0.4, 0.7]
    assert sample.n == 3
    with pytest.raises(ValueError):
        sample.values[0] = 0.5


def test_Sample_rejects_empty_and_non_finite_values() -> None:
    with pytest.raises(ValueError):
        bc.Sample(np.array([]))
    with pytest.raises(ValueError):
        bc.Sample(np.array([0.1, np.nan]))


def test_Sample_accepts_values_on_the_support_ends() -> None:
    bc.Sample(np.array([0.0, 0.5, 1.0])).check_support(0.0, 1.0)


def test_EstimatorConfig_rejects_invalid_geometry() -> None:
    with pytest.raises(ValueError):
        bc.EstimatorConfig.from_names(1.0, 0.0, 0.2)
    with pytest.raises(ValueError):
        bc.EstimatorConfig.from_names(0.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        bc.EstimatorConfig.from_names(0.0, 1.0, 0.6)
    bc.EstimatorConfig.from_names(0.0, 1.0, 0.5, family='k1')


def test_EstimatorConfig_rejects_family_over_another_base() -> None:
    with pytest.raises(ValueError):
        bc.EstimatorConfig(
            a=0.0,
            b=1.0,
            h=0.2,
            base=bc.BaseKernel('uniform'),
            family=bc.BoundaryKernelFamily('k2', bc.BaseKernel('epanechnikov')),
        )


def test_EstimatorConfig_label_and_bandwidth_change(k3_config: bc.EstimatorConfig) -> None:
    assert k3_config.label == 'k3'
    assert bc.EstimatorConfig.from_names(0.0, 1.0, 0.2).label == 'classical'
    narrower = k3_config.with_bandwidth(0.1)
    assert narrower.h == 0.1 and narrower.family == k3_config.family
    assert k3_config.h == 0.2


def test_classical_cdf_example_values(epanechnikov: bc.BaseKernel) -> None:
    assert classical_cdf(bc.Sample(np.array([0.5])), epanechnikov, 0.2, 0.5) == 0.5
    assert classical_cdf(bc.Sample(np.array([0.3, 0.7])), epanechnikov, 0.1, 0.5) == 0.5


def test_classical_cdf_is_one_beyond_largest_value_plus_h(
    beta22_sample: bc.Sample, epanechnikov: bc.BaseKernel
) -> None:
    x = beta22_sample.values[-1] + 0.2
    assert classical_cdf(beta22_sample, epanechnikov, 0.2, x) == 1.0
    assert classical_cdf(beta22_sample, epanechnikov, 0.2, beta22_sample.values[0] - 0.2) == 0.0


def test_classical_cdf_spills_mass_outside_support(beta22_sample: bc.Sample, epanechnikov: bc.BaseKernel) -> None:
    assert classical_cdf(beta22_sample, epanechnikov, 0.5, 0.0) > 0.0


def test_classical_cdf_rejects_non_positive_bandwidth(beta22_sample: bc.Sample, epanechnikov: bc.BaseKernel) -> None:
    with pytest.raises(ValueError):
        classical_cdf(beta22_sample, epanechnikov, 0.0, 0.5)


def test_classical_cdf_is_vectorised_and_proper(beta22_sample: bc.Sample, any_kernel: bc.BaseKernel) -> None:
    x = np.linspace(-0.5, 1.5, 401)
    values = classical_cdf(beta22_sample, any_kernel, 0.15, x)
    assert isinstance(values, np.ndarray) and values.shape == x.shape
    assert is_proper(values)


def test_boundary_cdf_is_exactly_zero_and_one_at_support_ends(
    beta22_sample: bc.Sample, any_family: bc.BoundaryKernelFamily
) -> None:
    cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.2, base=any_family.base, family=any_family)
    assert boundary_cdf(beta22_sample, cfg, 0.0) == 0.0
    assert boundary_cdf(beta22_sample, cfg, 1.0) == 1.0
    assert boundary_cdf(beta22_sample, cfg, -0.3) == 0.0
    assert boundary_cdf(beta22_sample, cfg, 1.3) == 1.0


def test_boundary_cdf_equals_classical_cdf_on_middle_interval(
    beta22_sample: bc.Sample, any_family: bc.BoundaryKernelFamily
) -> None:
    cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.2, base=any_family.base, family=any_family)
    for x in (0.2, 0.35, 0.5, 0.75):
        assert boundary_cdf(beta22_sample, cfg, x) == classical_cdf(beta22_sample, cfg.base, cfg.h, x)
    grid = np.linspace(0.2, 0.75, 56)
    expected = classical_cdf(beta22_sample, cfg.base, cfg.h, grid)
    assert np.allclose(boundary_cdf(beta22_sample, cfg, grid), expected, rtol=0.0, atol=1e-15)


def test_boundary_cdf_support_containment_example(k3_config: bc.EstimatorConfig) -> None:
    assert boundary_cdf(bc.Sample(np.array([0.5])), k3_config, 0.1) == 0.0


def test_boundary_cdf_uses_left_kernel_in_left_strip(k3_config: bc.EstimatorConfig) -> None:
    sample = bc.Sample(np.array([0.05, 0.12, 0.6]))
    x = 0.1
    alpha = x / k3_config.h
    family = k3_config.family
    assert family is not None
    expected = np.mean(family.left_antiderivative((x - sample.values) / k3_config.h, alpha))
    assert boundary_cdf(sample, k3_config, x) == pytest.approx(expected, abs=1e-15)


def test_boundary_cdf_right_strip_mirrors_left_strip(
    beta22_sample: bc.Sample, any_family: bc.BoundaryKernelFamily
) -> None:
    cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.2, base=any_family.base, family=any_family)
    mirrored = bc.Sample(1.0 - beta22_sample.values)
    x = np.array([0.81, 0.87, 0.93, 0.99])
    direct = boundary_cdf(beta22_sample, cfg, x)
    reflected = 1.0 - boundary_cdf(mirrored, cfg, 1.0 - x)
    assert np.allclose(direct, reflected, rtol=0.0, atol=1e-12)


def test_boundary_cdf_without_family_is_classical(beta22_sample: bc.Sample, epanechnikov: bc.BaseKernel) -> None:
    cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.2, base=epanechnikov)
    assert boundary_cdf(beta22_sample, cfg, 0.0) == classical_cdf(beta22_sample, epanechnikov, 0.2, 0.0)


def test_boundary_cdf_is_translation_equivariant(beta22_sample: bc.Sample, k3: bc.BoundaryKernelFamily) -> None:
    shift = 3.0
    cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.2, base=k3.base, family=k3)
    shifted_cfg = bc.EstimatorConfig(a=shift, b=1.0 + shift, h=0.2, base=k3.base, family=k3)
    shifted_sample = bc.Sample(beta22_sample.values + shift)
    x = np.linspace(0.0, 1.0, 101)
    shifted = boundary_cdf(shifted_sample, shifted_cfg, x + shift)
    assert np.allclose(boundary_cdf(beta22_sample, cfg, x), shifted, rtol=0.0, atol=1e-12)


def test_boundary_cdf_rejects_sample_outside_support(k3_config: bc.EstimatorConfig) -> None:
    with pytest.raises(SampleOutOfSupportError):
        boundary_cdf(bc.Sample(np.array([0.2, 1.2])), k3_config, 0.5)


def test_boundary_cdf_scalar_and_array_shapes(beta22_sample: bc.Sample, k3_config: bc.EstimatorConfig) -> None:
    assert isinstance(boundary_cdf(beta22_sample, k3_config, 0.1), float)
    values = boundary_cdf(beta22_sample, k3_config, np.array([[0.1, 0.5], [0.9, 1.0]]))
    assert isinstance(values, np.ndarray) and values.shape == (2, 2)
    assert values[1, 1] == 1.0


def test_evaluate_grid_example_values(beta22_sample: bc.Sample, k3_config: bc.EstimatorConfig) -> None:
    assert list(evaluate_grid(beta22_sample, k3_config, [0.0, 1.0])) == [0.0, 1.0]
    single = evaluate_grid(beta22_sample, k3_config, [0.4])
    assert single.shape == (1,)


def test_evaluate_grid_rejects_unsorted_grid(beta22_sample: bc.Sample, k3_config: bc.EstimatorConfig) -> None:
    with pytest.raises(ValueError):
        evaluate_grid(beta22_sample, k3_config, [0.5, 0.2])


def test_evaluate_grid_is_nondecreasing_for_every_family(
    beta22_sample: bc.Sample, any_family: bc.BoundaryKernelFamily
) -> None:
    cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.2, base=any_family.base, family=any_family)
    values = evaluate_grid(beta22_sample, cfg, np.linspace(0.0, 1.0, 1001))
    assert np.all(np.diff(values) >= -1e-12)


def test_is_proper_examples() -> None:
    assert is_proper([0.0, 0.5, 1.0])
    assert not is_proper([0.0, 0.6, 0.4])
    assert not is_proper([0.0, 1.1])
    assert not is_proper([-0.01, 0.5])
    assert is_proper([])


def test_estimates_are_proper_on_random_samples(any_family: bc.BoundaryKernelFamily) -> None:
    grid = np.linspace(0.0, 1.0, 2001)
    dist = bc.BetaMixture(w=0.0, shape_b=2.0)
    for n in (10, 50, 200):
        for seed in range(5):
            sample = bc.Sample(dist.sample(np.random.default_rng(seed), n))
            cfg = bc.EstimatorConfig(a=0.0, b=1.0, h=0.15, base=any_family.base, family=any_family)
            assert is_proper(evaluate_grid(sample, cfg, grid), tol=1e-12), f'{any_family.variant} n={n} seed={seed}'


def test_sup_distance_bounds_pointwise_errors(beta22: bc.BetaMixture, beta22_sample: bc.Sample) -> None:
    cfg = bc.EstimatorConfig.from_names(0.0, 1.0, 0.2, 'epanechnikov', 'k2')
    distance = sup_distance(beta22_sample, cfg, beta22.cdf)
    assert 0.0 < distance < 1.0
    for x in (0.05, 0.5, 0.95):
        assert distance >= abs(boundary_cdf(beta22_sample, cfg, x) - beta22.cdf(x))
