from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest
from scipy import special, stats

from pcedep.exceptions import DomainError, UnsupportedError
from pcedep.schemas import RuleKind
from pcedep.univariate_poly import (
    PolyFamily,
    QuadratureRule,
    evaluate_univariate,
    gauss_rule,
    recurrence_coefficients,
    tensor_gauss_rule,
)

FAMILIES = [
    PolyFamily.legendre(),
    PolyFamily.jacobi(2.0, 5.0),
    PolyFamily.jacobi(10.0, 10.0),
    PolyFamily.jacobi(0.5, 3.0, -2.0, 4.0),
    PolyFamily.hermite(),
]


def test_symmetric_families_have_constant_diagonal() -> None:
    hermite_diag, _ = recurrence_coefficients(PolyFamily.hermite(), 10)
    legendre_diag, _ = recurrence_coefficients(PolyFamily.legendre(), 10)

    np.testing.assert_allclose(hermite_diag, 0.0)
    np.testing.assert_allclose(legendre_diag, 0.5, atol=1e-15)


def test_monomials_have_no_recurrence() -> None:
    with pytest.raises(UnsupportedError):
        recurrence_coefficients(PolyFamily.monomial(), 3)
    with pytest.raises(UnsupportedError):
        gauss_rule(PolyFamily.monomial(), 3)


@pytest.mark.parametrize("family", FAMILIES)
def test_gram_matrix_is_identity(family: PolyFamily) -> None:
    rule = gauss_rule(family, 50)
    values = evaluate_univariate(family, 20, rule.nodes)

    gram = values.T @ (rule.weights[:, None] * values)

    np.testing.assert_allclose(gram, np.eye(21), atol=1e-12)


@pytest.mark.parametrize("family", FAMILIES)
def test_gauss_weights_are_a_probability_rule(family: PolyFamily) -> None:
    for n in (1, 2, 7, 30):
        rule = gauss_rule(family, n)
        nodes = rule.nodes[:, 0]

        assert np.all(rule.weights > 0)
        assert rule.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(np.diff(nodes) > 0)
        if family.bounded:
            assert np.all((nodes > family.lower) & (nodes < family.upper))


def test_small_rules_match_closed_forms() -> None:
    legendre = gauss_rule(PolyFamily.legendre(), 1)
    hermite = gauss_rule(PolyFamily.hermite(), 2)

    np.testing.assert_allclose(legendre.nodes[:, 0], [0.5])
    np.testing.assert_allclose(legendre.weights, [1.0])
    np.testing.assert_allclose(hermite.nodes[:, 0], [-1.0, 1.0], atol=1e-14)
    np.testing.assert_allclose(hermite.weights, [0.5, 0.5], atol=1e-14)


def test_beta_gauss_rule_reproduces_moments() -> None:
    alpha, beta = 2.0, 5.0
    for n in range(1, 11):
        rule = gauss_rule(PolyFamily.jacobi(alpha, beta), n)
        for power in range(2 * n):
            exact = special.beta(alpha + power, beta) / special.beta(alpha, beta)
            assert rule.integrate(rule.nodes[:, 0] ** power) == pytest.approx(exact, rel=1e-11)


def test_hermite_gauss_rule_reproduces_moments() -> None:
    rule = gauss_rule(PolyFamily.hermite(), 8)
    for power in range(16):
        assert rule.integrate(rule.nodes[:, 0] ** power) == pytest.approx(
            float(stats.norm.moment(power)), abs=1e-9
        )


def test_low_degree_closed_forms() -> None:
    x = np.linspace(0.0, 1.0, 11)
    legendre = evaluate_univariate(PolyFamily.legendre(), 2, x)
    t = 2 * x - 1

    np.testing.assert_allclose(legendre[:, 0], 1.0)
    np.testing.assert_allclose(legendre[:, 1], math.sqrt(3) * t, atol=1e-13)
    np.testing.assert_allclose(legendre[:, 2], math.sqrt(5) * (3 * t**2 - 1) / 2, atol=1e-13)
    assert legendre[5, 1] == pytest.approx(0.0, abs=1e-15)

    z = np.linspace(-3.0, 3.0, 13)
    hermite = evaluate_univariate(PolyFamily.hermite(), 2, z)
    np.testing.assert_allclose(hermite[:, 2], (z**2 - 1) / math.sqrt(2), atol=1e-13)


def test_points_outside_support_raise() -> None:
    with pytest.raises(DomainError):
        evaluate_univariate(PolyFamily.jacobi(2.0, 5.0), 3, [0.5, 1.5])


def test_monomials_are_rescaled_powers() -> None:
    values = evaluate_univariate(PolyFamily.monomial(-3.0, 3.0), 3, [-3.0, 0.0, 1.5])

    np.testing.assert_allclose(values[:, 3], [-1.0, 0.0, 0.125])


def test_tensor_rule_integrates_products() -> None:
    families = [PolyFamily.jacobi(2.0, 5.0), PolyFamily.legendre(-1.0, 1.0)]
    rule = tensor_gauss_rule(families, [6, 4])

    assert len(rule) == 24
    assert rule.description is RuleKind.TENSOR_GAUSS
    assert rule.integrate(rule.nodes[:, 0] * rule.nodes[:, 1] ** 2) == pytest.approx((2 / 7) * (1 / 3))


def test_quadrature_rule_csv_keeps_values(tmp_path: Path) -> None:
    rule = tensor_gauss_rule([PolyFamily.legendre(), PolyFamily.hermite()], [3, 2])
    path = tmp_path / "rule.csv"
    rule.to_csv(path)

    loaded = QuadratureRule.from_csv(path, RuleKind.TENSOR_GAUSS)

    assert path.read_text(encoding="utf-8").splitlines()[0] == "node_1,node_2,weight"
    np.testing.assert_array_equal(loaded.nodes, rule.nodes)
    np.testing.assert_array_equal(loaded.weights, rule.weights)
