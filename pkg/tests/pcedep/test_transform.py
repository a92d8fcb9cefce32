from __future__ import annotations

import numpy as np
import pytest
from scipy.special import ndtr

from pcedep.exceptions import BoundaryError, InfeasibleCorrelationError, InvalidArgumentError, UnsupportedError
from pcedep.measure import (
    Marginal,
    banana_density,
    beta_mixture_density,
    gaussian_copula_density,
    tensor_beta_density,
)
from pcedep.schemas import TargetSpace
from pcedep.transform import (
    NatafTransform,
    RosenblattTransform,
    nataf_correlation_forward,
    nataf_correlation_solve,
    nataf_forward,
    nataf_inverse,
    nataf_pair_correlation,
    rosenblatt_forward,
    rosenblatt_inverse,
)


def _interior_grid(count: int = 7) -> np.ndarray:
    axis = np.linspace(0.1, 0.9, count)
    return np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1).reshape(-1, 2)


def test_gaussian_marginals_keep_the_target_correlation() -> None:
    target = np.array([[1.0, 0.3, -0.5], [0.3, 1.0, 0.2], [-0.5, 0.2, 1.0]])
    marginals = [Marginal.normal(), Marginal.normal(2.0, 3.0), Marginal.normal(-1.0, 0.5)]

    r_v = nataf_correlation_solve(target, marginals)

    np.testing.assert_allclose(r_v, target, atol=1e-10)


def test_beta_marginals_shrink_the_correlation_magnitude() -> None:
    marginals = [Marginal.beta(2, 5), Marginal.beta(2, 5)]

    induced = nataf_pair_correlation(0.8, *marginals)

    assert 0.7 < induced < 0.8


def test_solve_inverts_the_forward_correlation_map() -> None:
    marginals = [Marginal.beta(2, 5), Marginal.uniform(), Marginal.beta(5, 2)]
    r_v = np.array([[1.0, 0.4, -0.3], [0.4, 1.0, 0.1], [-0.3, 0.1, 1.0]])

    r_z = nataf_correlation_forward(r_v, marginals)

    np.testing.assert_allclose(nataf_correlation_solve(r_z, marginals), r_v, atol=1e-8)


def test_unreachable_correlation_is_infeasible() -> None:
    marginals = [Marginal.beta(0.5, 5), Marginal.beta(0.5, 5)]

    with pytest.raises(InfeasibleCorrelationError):
        nataf_correlation_solve([[1.0, -0.99], [-0.99, 1.0]], marginals)


def test_correlation_shape_and_range_are_validated() -> None:
    marginals = [Marginal.uniform(), Marginal.uniform()]

    with pytest.raises(InvalidArgumentError):
        nataf_correlation_solve(np.eye(3), marginals)
    with pytest.raises(InvalidArgumentError):
        nataf_correlation_solve([[1.0, 1.0], [1.0, 1.0]], marginals)


@pytest.mark.parametrize("target", [TargetSpace.GAUSS, TargetSpace.UNIFORM])
def test_nataf_round_trip(target: TargetSpace) -> None:
    marginals = [Marginal.beta(2, 5), Marginal.beta(2, 5)]
    transform = NatafTransform.from_correlation(marginals, [[1.0, -0.6], [-0.6, 1.0]], target)
    points = _interior_grid() * 0.8

    forward = nataf_forward(transform, points)
    back = nataf_inverse(transform, forward)

    np.testing.assert_allclose(back, points, atol=1e-10)
    if target is TargetSpace.UNIFORM:
        assert np.all(np.abs(forward) < 1)


def test_nataf_decorrelates_copula_samples() -> None:
    density = gaussian_copula_density([Marginal.beta(2, 5)] * 2, [[1.0, 0.7], [0.7, 1.0]])
    transform = NatafTransform.from_density(density)

    u = transform.forward(density.sample(20_000, seed=3))

    assert abs(np.corrcoef(u.T)[0, 1]) < 0.03
    np.testing.assert_allclose(u.std(axis=0), 1.0, atol=0.03)


def test_nataf_from_tensor_density_is_the_marginal_map() -> None:
    density = tensor_beta_density(2, 5, 2)
    transform = NatafTransform.from_density(density)
    points = _interior_grid() * 0.5

    expected = np.column_stack([marginal.to_gaussian(points[:, k]) for k, marginal in enumerate(density.marginals)])

    np.testing.assert_allclose(transform.forward(points), expected)
    np.testing.assert_array_equal(transform.r_v, np.eye(2))


def test_nataf_needs_a_copula() -> None:
    with pytest.raises(UnsupportedError):
        NatafTransform.from_density(banana_density())


def test_support_boundary_has_no_gaussian_image() -> None:
    transform = NatafTransform.from_density(tensor_beta_density(2, 5, 2))

    with pytest.raises(BoundaryError) as info:
        transform.forward([[0.3, 0.0]])

    assert info.value.coordinate == 1


def test_correlation_export() -> None:
    marginals = [Marginal.beta(2, 5), Marginal.uniform(-1, 1)]
    transform = NatafTransform.from_correlation(marginals, [[1.0, 0.5], [0.5, 1.0]])

    export = transform.to_export()

    assert export.marginals == [{"name": "beta", "params": [2, 5, 0.0, 1.0]}, {"name": "uniform", "params": [-1, 1]}]
    assert export.r_z[0][1] == 0.5
    assert export.r_v[0][1] == pytest.approx(transform.r_v[0, 1])


def test_rosenblatt_matches_nataf_for_gaussian_copula() -> None:
    density = gaussian_copula_density([Marginal.beta(2, 5)] * 2, [[1.0, 0.5], [0.5, 1.0]])
    points = _interior_grid() * 0.7

    rosenblatt = RosenblattTransform.for_density(density).forward(points)
    nataf = NatafTransform.from_density(density).forward(points)

    np.testing.assert_allclose(rosenblatt, ndtr(nataf), atol=1e-10)


def test_rosenblatt_inverts_copula_conditionals() -> None:
    density = gaussian_copula_density([Marginal.beta(2, 5)] * 2, [[1.0, -0.5], [-0.5, 1.0]])
    transform = RosenblattTransform.for_density(density)
    u = _interior_grid()

    z = rosenblatt_inverse(transform, u)

    np.testing.assert_allclose(rosenblatt_forward(transform, z), u, atol=1e-8)
    assert np.all((z > 0) & (z < 1))


def test_rosenblatt_by_quadrature_on_the_banana() -> None:
    density = banana_density()
    transform = RosenblattTransform.for_density(density)
    u = _interior_grid(5)

    z = transform.inverse(u)

    np.testing.assert_allclose(transform.forward(z), u, atol=1e-8)


def test_rosenblatt_forward_is_uniform_on_samples() -> None:
    density = banana_density()
    transform = RosenblattTransform.for_density(density)

    u = transform.forward(density.sample(2_000, seed=11))

    np.testing.assert_allclose(u.mean(axis=0), 0.5, atol=0.03)


def test_rosenblatt_rejects_the_closed_cube() -> None:
    transform = RosenblattTransform.for_density(tensor_beta_density(2, 5, 2))

    with pytest.raises(InvalidArgumentError):
        transform.inverse([[0.0, 0.5]])


def test_rosenblatt_needs_a_provider() -> None:
    with pytest.raises(UnsupportedError):
        RosenblattTransform.for_density(beta_mixture_density(((0.5, 10, 4), (0.5, 4, 10)), 3))
