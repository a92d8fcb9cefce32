"""Surface-chemistry ODE surrogates on non-Gaussian-copula densities.

``banana`` draws the reaction rates from the banana density on its box.
``zonotope`` composes the ODE with a random 2-D projection of a 20-D unit
cube, so the reduced inputs follow a KDE fitted to projected samples.
"""

from __future__ import annotations

from functools import partial
from typing import Any

import numpy as np

from pcedep.basis import projected_sobol_rule
from pcedep.measure import banana_density, spawn_seeds, zonotope_kde
from pcedep.models import ChemistrySpec, chemistry_qoi, chemistry_ridge
from pcedep.multi_index import MultiIndexSet
from pcedep.schemas import ExperimentConfig, ExperimentName, RuleKind, StrategyKind
from pcedep.surrogate import PceSurrogate, StrategySpec, fit_strategy
from scripts.experiments.base import ConvergenceExperiment, Problem, TrialSeeds
from scripts.experiments.registry import register_experiment
from scripts.experiments.scenarios.common import draw_test_set, float_option, int_option

CHEMISTRY_TEST_SAMPLES = 1_000
KDE_SAMPLES = 10_000
AMBIENT_DIMENSION = 20


def _chemistry_spec(options: dict[str, Any]) -> ChemistrySpec:
    return ChemistrySpec(step=float_option(options, "step", ChemistrySpec().step))


@register_experiment(ExperimentName.BANANA)
class BananaExperiment(ConvergenceExperiment):
    name = "banana"
    default_degrees = tuple(range(1, 16))
    default_strategies = ("gs(monomial)", "gs(monomial)/mc1000", "gs(monomial)/mc10000", "dom(1,1)")
    default_test_samples = CHEMISTRY_TEST_SAMPLES

    def build_problem(self, config: ExperimentConfig, seeds: TrialSeeds) -> Problem:
        density = banana_density()
        model = partial(chemistry_qoi, spec=_chemistry_spec(self.options))
        points, values = draw_test_set(density, model, config.test_samples or self.default_test_samples, seeds.test)
        return Problem(density=density, model=model, test_points=points, test_values=values)


def _projected_uniforms(projection: np.ndarray, count: int, seed: np.random.SeedSequence) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.random((count, projection.shape[1])) @ projection.T


@register_experiment(ExperimentName.ZONOTOPE)
class ZonotopeExperiment(ConvergenceExperiment):
    """Ridge model seen through its reduced inputs; Sobol points of the cube give the GS moments."""

    name = "zonotope"
    default_degrees = tuple(range(1, 16))
    default_strategies = ("gs(monomial)/sobol10000", "dom(1,1)")
    default_test_samples = CHEMISTRY_TEST_SAMPLES

    def build_problem(self, config: ExperimentConfig, seeds: TrialSeeds) -> Problem:
        ambient = int_option(self.options, "ambient", AMBIENT_DIMENSION)
        projection_seed, kde_seed, candidate_seed = spawn_seeds(seeds.problem, 3)
        ridge = chemistry_ridge(ambient, projection_seed, _chemistry_spec(self.options))
        kde_count = int_option(self.options, "kde_samples", KDE_SAMPLES)
        density = zonotope_kde(_projected_uniforms(ridge.projection, kde_count, kde_seed))
        test_count = config.test_samples or self.default_test_samples
        test_points = _projected_uniforms(ridge.projection, test_count, seeds.test)
        return Problem(
            density=density,
            model=ridge.reduced,
            test_points=test_points,
            test_values=ridge.reduced(test_points),
            candidates=_projected_uniforms(ridge.projection, config.candidates, candidate_seed),
            metadata={"projection": ridge.projection},
        )

    def fit(
        self,
        spec: StrategySpec,
        problem: Problem,
        index_set: MultiIndexSet,
        config: ExperimentConfig,
        seeds: TrialSeeds,
    ) -> PceSurrogate:
        rule = None
        if spec.kind is StrategyKind.GS and spec.rule is RuleKind.SOBOL and spec.rule_size is not None:
            rule = projected_sobol_rule(problem.metadata["projection"], spec.rule_size, seed=seeds.fit)
        return fit_strategy(
            spec,
            problem.density,
            index_set,
            problem.model,
            candidates=problem.candidates if problem.candidates is not None else config.candidates,
            seed=seeds.fit,
            rule=rule,
        )
