"""Random-diffusivity boundary value problem under a two-component Beta mixture.

Levels index anisotropic sets whose weights follow the decay of the
diffusivity expansion, so later inputs get lower degrees.
"""

from __future__ import annotations

from functools import partial

from pcedep.measure import beta_mixture_density
from pcedep.models import DiffusionSpec, diffusion_qoi
from pcedep.multi_index import MultiIndexSet, anisotropic_set, diffusion_alpha
from pcedep.schemas import ExperimentConfig, ExperimentName
from scripts.experiments.base import ConvergenceExperiment, Problem, TrialSeeds
from scripts.experiments.registry import register_experiment
from scripts.experiments.scenarios.common import draw_test_set, float_option, int_option

MIXTURE = ((0.5, 10.0, 4.0), (0.5, 4.0, 10.0))


@register_experiment(ExperimentName.DIFFUSION)
class DiffusionExperiment(ConvergenceExperiment):
    """Levels 1-4 at d = 11; each level keeps total degree <= level unless ``max_total_degree`` says otherwise."""

    name = "diffusion"
    default_degrees = tuple(range(1, 5))
    default_strategies = ("gs(1,1)", "gs(1,1)/mc10000", "dom(1,1)")
    default_test_samples = 1_000

    @property
    def spec(self) -> DiffusionSpec:
        return DiffusionSpec(
            dimension=int_option(self.options, "dimension", 11),
            correlation_length=float_option(self.options, "correlation_length", 0.5),
            grid_size=int_option(self.options, "grid_size", 201),
        )

    def index_set(self, dimension: int, degree: int) -> MultiIndexSet:
        cap = int_option(self.options, "max_total_degree", degree)
        alpha = diffusion_alpha(dimension, self.spec.scaled_length)
        return anisotropic_set(alpha, degree, max_total_degree=cap)

    def build_problem(self, config: ExperimentConfig, seeds: TrialSeeds) -> Problem:
        spec = self.spec
        density = beta_mixture_density(MIXTURE, spec.dimension)
        model = partial(diffusion_qoi, spec)
        points, values = draw_test_set(density, model, config.test_samples or self.default_test_samples, seeds.test)
        return Problem(density=density, model=model, test_points=points, test_values=values)
