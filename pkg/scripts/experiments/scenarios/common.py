"""Densities, reference means and option helpers shared by the scenarios."""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

import numpy as np
from numpy.typing import NDArray

from pcedep.basis import box_gauss_rule
from pcedep.exceptions import InvalidArgumentError
from pcedep.measure import (
    GaussianCopulaDensity,
    JointDensity,
    Marginal,
    Seed,
    banana_density,
    beta_mixture_density,
    equicorrelation,
    gaussian_copula_density,
    sign_flipped,
    tensor_beta_density,
)
from pcedep.surrogate import Model
from pcedep.univariate_poly import PolyFamily, gauss_rule

BETA_MARGINAL = (2.0, 5.0)
REFERENCE_GAUSS_ORDER = 100
REFERENCE_SAMPLES = 1_000_000


def int_option(options: dict[str, Any], key: str, default: int) -> int:
    value = options.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int | float) or int(value) != value:
        msg = f"option {key} must be an integer, got {value!r}"
        raise InvalidArgumentError(msg)
    return int(value)


def float_option(options: dict[str, Any], key: str, default: float) -> float:
    value = options.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int | float):
        msg = f"option {key} must be a number, got {value!r}"
        raise InvalidArgumentError(msg)
    return float(value)


def correlated_beta_density(dimension: int) -> GaussianCopulaDensity:
    """Beta(2,5) marginals under a Gaussian copula.

    Two dimensions use ``R_V = -0.9`` off the diagonal; larger dimensions start
    from equicorrelation 0.9 and flip the sign of every other axis.
    """
    marginals = [Marginal.beta(*BETA_MARGINAL)] * dimension
    if dimension == 2:
        return gaussian_copula_density(marginals, equicorrelation(2, -0.9))
    return gaussian_copula_density(marginals, sign_flipped(equicorrelation(dimension, 0.9), range(0, dimension, 2)))


def reference_mean(
    density: JointDensity,
    model: Model,
    *,
    samples: int = REFERENCE_SAMPLES,
    seed: Seed = None,
) -> float:
    """``E_ω[f]`` by a dense tensor Gauss rule up to two dimensions, Monte Carlo above."""
    if density.dimension == 1 and density.bounded:
        lower, upper = float(density.lower[0]), float(density.upper[0])
        rule = gauss_rule(PolyFamily.legendre(lower, upper), REFERENCE_GAUSS_ORDER)
        values = density.density(rule.nodes) * model(rule.nodes)
        return (upper - lower) * rule.integrate(values)
    if density.dimension == 2 and density.bounded:
        rule = box_gauss_rule(density.lower, density.upper, REFERENCE_GAUSS_ORDER)
        volume = float(np.prod(density.upper - density.lower))
        return volume * rule.integrate(density.density(rule.nodes) * model(rule.nodes))
    return float(np.mean(model(density.sample(samples, seed))))


def draw_test_set(
    density: JointDensity,
    model: Model,
    count: int,
    seed: Seed,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    points = density.sample(count, seed)
    return points, np.asarray(model(points), dtype=float).ravel()


DensityFactory = Callable[[], JointDensity]

DENSITIES: dict[str, DensityFactory] = {
    "copula2d": lambda: correlated_beta_density(2),
    "copula10d": lambda: correlated_beta_density(10),
    "banana": banana_density,
    "mixture": lambda: beta_mixture_density([(0.5, 10.0, 4.0), (0.5, 4.0, 10.0)], 2),
    "beta-tensor": lambda: tensor_beta_density(*BETA_MARGINAL, 2),
}


def create_density(name: str) -> JointDensity:
    if name not in DENSITIES:
        available = ", ".join(sorted(DENSITIES))
        msg = f"Unknown density {name!r}. Available: {available}"
        raise KeyError(msg)
    return DENSITIES[name]()


def available_densities() -> list[str]:
    return sorted(DENSITIES)
