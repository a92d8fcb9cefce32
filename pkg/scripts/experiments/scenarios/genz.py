"""Oscillatory Genz function on correlated Beta(2,5) inputs.

``genz2d``/``genz10d`` compare interpolation errors and conditioning of the
three strategies, ``mean2d``/``mean10d`` add mean errors against a reference,
and ``mc-moments`` orthogonalizes with Monte Carlo moment matrices of growing
size.
"""

from __future__ import annotations

from functools import partial
from typing import ClassVar

from pcedep.measure import JointDensity
from pcedep.models import genz_oscillatory, make_genz_spec
from pcedep.schemas import ExperimentConfig, ExperimentName
from scripts.experiments.base import ConvergenceExperiment, Problem, TrialSeeds
from scripts.experiments.registry import register_experiment
from scripts.experiments.scenarios.common import (
    REFERENCE_SAMPLES,
    correlated_beta_density,
    draw_test_set,
    int_option,
    reference_mean,
)

DEGREES_2D = tuple(range(1, 16))
DEGREES_10D = tuple(range(1, 5))


class GenzExperiment(ConvergenceExperiment):
    dimension: ClassVar[int] = 2
    with_reference_mean: ClassVar[bool] = False

    def make_density(self) -> JointDensity:
        return correlated_beta_density(self.dimension)

    def build_problem(self, config: ExperimentConfig, seeds: TrialSeeds) -> Problem:
        genz_seed = int(seeds.problem.generate_state(1)[0])
        spec = make_genz_spec(self.dimension, genz_seed)
        model = partial(genz_oscillatory, spec)
        density = self.make_density()
        test_seed, reference_seed = seeds.test.spawn(2)
        points, values = draw_test_set(density, model, config.test_samples or self.default_test_samples, test_seed)
        mean = None
        if self.with_reference_mean:
            samples = int_option(self.options, "reference_samples", REFERENCE_SAMPLES)
            mean = reference_mean(density, model, samples=samples, seed=reference_seed)
        return Problem(
            density=density,
            model=model,
            test_points=points,
            test_values=values,
            reference_mean=mean,
            metadata={"coefficients": list(spec.coefficients), "shift": spec.shift},
        )


@register_experiment(ExperimentName.GENZ2D)
class Genz2dExperiment(GenzExperiment):
    name = "genz2d"
    default_degrees = DEGREES_2D
    default_strategies = ("gs(1,1)", "gs(2,5)", "dom(1,1)", "dom(2,5)", "nataf(gauss)")


@register_experiment(ExperimentName.GENZ10D)
class Genz10dExperiment(GenzExperiment):
    name = "genz10d"
    dimension = 10
    default_degrees = DEGREES_10D
    default_strategies = ("gs(1,1)", "gs(2,5)", "dom(1,1)", "dom(2,5)", "nataf(gauss)")


@register_experiment(ExperimentName.MEAN2D)
class Mean2dExperiment(GenzExperiment):
    name = "mean2d"
    with_reference_mean = True
    default_degrees = DEGREES_2D
    default_strategies = ("gs(1,1)", "gs(2,5)", "nataf(gauss)")


@register_experiment(ExperimentName.MEAN10D)
class Mean10dExperiment(GenzExperiment):
    name = "mean10d"
    dimension = 10
    with_reference_mean = True
    default_degrees = DEGREES_10D
    default_strategies = ("gs(1,1)", "gs(2,5)", "nataf(gauss)")


@register_experiment(ExperimentName.MC_MOMENTS)
class McMomentsExperiment(GenzExperiment):
    """GS(2,5) with exact and Monte Carlo moment matrices; a size-J rule stops once N exceeds J."""

    name = "mc-moments"
    default_degrees = DEGREES_2D
    default_strategies = ("gs(2,5)", "gs(2,5)/mc100", "gs(2,5)/mc1000", "gs(2,5)/mc10000", "gs(2,5)/mc100000")
