from __future__ import annotations

import numpy as np
import pytest

from pcedep.basis import (
    OrthogonalizedBasis,
    TensorBasis,
    assemble_vandermonde,
    box_gauss_rule,
    christoffel,
    density_ratio_quadrature,
    gram_schmidt_orthogonalize,
    moment_condition_number,
    monte_carlo_rule,
    projected_sobol_rule,
    sobol_rule,
)
from pcedep.exceptions import IllPosedOrthogonalizationError, InvalidArgumentError, ZeroDensityError
from pcedep.measure import (
    JointDensity,
    Marginal,
    TensorDensity,
    equicorrelation,
    gaussian_copula_density,
    tensor_beta_density,
)
from pcedep.multi_index import total_degree_set
from pcedep.schemas import RuleKind
from pcedep.univariate_poly import PolyFamily, QuadratureRule, gauss_rule, tensor_gauss_rule


def _copula() -> JointDensity:
    return gaussian_copula_density([Marginal.beta(2.0, 5.0)] * 2, equicorrelation(2, -0.9))


def _uniform_square() -> TensorDensity:
    return TensorDensity([Marginal.uniform()] * 2)


def _reweighted_rule(density: JointDensity, order: int) -> QuadratureRule:
    return density_ratio_quadrature(box_gauss_rule([0.0, 0.0], [1.0, 1.0], order), density, _uniform_square())


def test_tensor_basis_evaluates_products() -> None:
    families = (PolyFamily.legendre(), PolyFamily.hermite())
    basis = TensorBasis(total_degree_set(2, 2), families)
    points = np.array([[0.2, -1.0], [0.9, 0.5]])

    values = assemble_vandermonde(basis, points)

    position = basis.index_set.position((1, 1))
    expected = np.sqrt(3) * (2 * points[:, 0] - 1) * points[:, 1]
    np.testing.assert_allclose(values[:, position], expected)
    np.testing.assert_allclose(values[:, 0], 1.0)


def test_tensor_basis_rejects_mismatched_families() -> None:
    with pytest.raises(InvalidArgumentError):
        TensorBasis(total_degree_set(2, 2), (PolyFamily.legendre(),))


def test_gso_is_orthonormal_for_the_rule_it_used() -> None:
    rule = _reweighted_rule(_copula(), 50)
    tensor = TensorBasis(total_degree_set(2, 10), (PolyFamily.legendre(),) * 2)

    basis = gram_schmidt_orthogonalize(tensor, rule)

    values = basis.evaluate(rule.nodes)
    weights = rule.weights / rule.weights.sum()
    gram = values.T @ (weights[:, None] * values)
    np.testing.assert_allclose(gram, np.eye(basis.size), atol=1e-8)
    np.testing.assert_allclose(values[:, 0], 1.0, atol=1e-12)
    assert isinstance(basis, OrthogonalizedBasis)
    assert basis.quadrature_size == 2500


def test_gso_is_orthonormal_on_an_independent_rule() -> None:
    density = tensor_beta_density(2.0, 5.0, 2)
    tensor = TensorBasis(total_degree_set(2, 10), (PolyFamily.legendre(),) * 2)
    basis = gram_schmidt_orthogonalize(tensor, _reweighted_rule(density, 50))

    check = _reweighted_rule(density, 100)
    values = basis.evaluate(check.nodes)
    gram = values.T @ (check.weights[:, None] * values)

    assert np.max(np.abs(gram - np.eye(basis.size))) < 1e-6


def test_gso_is_triangular_and_degree_graded() -> None:
    tensor = TensorBasis(total_degree_set(2, 4), (PolyFamily.legendre(),) * 2)
    basis = gram_schmidt_orthogonalize(tensor, _reweighted_rule(_copula(), 30))

    np.testing.assert_allclose(np.tril(basis.change_of_basis, -1), 0.0)
    assert np.all(np.diag(basis.change_of_basis) > 0)


def test_gso_reports_rank_deficient_index() -> None:
    nodes = np.column_stack([np.linspace(0.05, 0.95, 20), np.full(20, 0.5)])
    rule = QuadratureRule(nodes=nodes, weights=np.full(20, 0.05), description=RuleKind.MONTE_CARLO)
    tensor = TensorBasis(total_degree_set(2, 2), (PolyFamily.legendre(),) * 2)

    with pytest.raises(IllPosedOrthogonalizationError) as info:
        gram_schmidt_orthogonalize(tensor, rule)

    assert info.value.multi_index == (0, 1)


def test_gso_needs_enough_nodes() -> None:
    tensor = TensorBasis(total_degree_set(2, 3), (PolyFamily.legendre(),) * 2)
    rule = monte_carlo_rule(np.random.default_rng(0).random((5, 2)))

    with pytest.raises(InvalidArgumentError):
        gram_schmidt_orthogonalize(tensor, rule)


def test_moment_condition_number_is_one_for_the_native_rule() -> None:
    families = [PolyFamily.jacobi(2.0, 5.0)] * 2
    tensor = TensorBasis(total_degree_set(2, 5), tuple(families))

    assert moment_condition_number(tensor, tensor_gauss_rule(families, [10, 10])) == pytest.approx(1.0)


def test_monte_carlo_moments_are_worse_conditioned_than_gauss() -> None:
    density = tensor_beta_density(2.0, 5.0, 2)
    tensor = TensorBasis(total_degree_set(2, 6), (PolyFamily.legendre(),) * 2)
    gauss = moment_condition_number(tensor, _reweighted_rule(density, 50))
    sampled = moment_condition_number(tensor, monte_carlo_rule(density.sample(100, 1)))

    assert sampled > gauss


def test_density_ratio_quadrature_rejects_zero_dominating_density() -> None:
    rule = box_gauss_rule([0.0, 0.0], [1.0, 1.0], 4)
    narrow = TensorDensity([Marginal.uniform(0.0, 0.5)] * 2)

    with pytest.raises(ZeroDensityError):
        density_ratio_quadrature(rule, _copula(), narrow)


def test_monte_carlo_rule_takes_a_prefix() -> None:
    samples = np.arange(20, dtype=float).reshape(10, 2)
    rule = monte_carlo_rule(samples, 4)

    np.testing.assert_array_equal(rule.nodes, samples[:4])
    np.testing.assert_allclose(rule.weights, 0.25)
    with pytest.raises(InvalidArgumentError):
        monte_carlo_rule(samples, 11)


def test_sobol_rule_integrates_the_density() -> None:
    density = tensor_beta_density(2.0, 5.0, 2)
    rule = sobol_rule([0.0, 0.0], [1.0, 1.0], 4096, seed=3, density=density)

    assert rule.description is RuleKind.SOBOL
    assert rule.weights.sum() == pytest.approx(1.0, abs=2e-2)
    assert rule.integrate(rule.nodes[:, 0]) == pytest.approx(2 / 7, abs=1e-2)


def test_projected_sobol_nodes_lie_in_the_zonotope() -> None:
    projection = np.array([[0.6, 0.8, 0.0], [0.0, 0.0, 1.0]])
    rule = projected_sobol_rule(projection, 512, seed=1)

    assert rule.nodes.shape == (512, 2)
    assert np.all(rule.nodes[:, 0] >= 0.0)
    assert np.all(rule.nodes[:, 0] <= 1.4)
    np.testing.assert_allclose(rule.weights.sum(), 1.0)


def test_christoffel_function_averages_to_basis_size() -> None:
    density = _copula()
    tensor = TensorBasis(total_degree_set(2, 5), (PolyFamily.legendre(),) * 2)
    basis = gram_schmidt_orthogonalize(tensor, _reweighted_rule(density, 50))

    mean = christoffel(basis, density.sample(100_000, 11)).mean()

    assert mean == pytest.approx(basis.size, rel=0.05)


def test_christoffel_of_one_dimensional_legendre() -> None:
    basis = TensorBasis(total_degree_set(1, 1), (PolyFamily.legendre(),))

    np.testing.assert_allclose(christoffel(basis, gauss_rule(PolyFamily.legendre(), 3).nodes)[1], 1.0)
