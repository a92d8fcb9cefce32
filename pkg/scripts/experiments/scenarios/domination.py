"""Tensor Gauss interpolation under dominating measures.

``genz1d-basis`` compares the exact Beta(10,10) basis with a uniform
dominating basis and the uniform-target Nataf map in one dimension.
``cr-study`` sweeps dominating Beta(β,β) measures of a Beta(10,10)^3 density,
so each strategy carries its domination constant.
"""

from __future__ import annotations

import dataclasses

from pcedep.measure import JointDensity, tensor_beta_density
from pcedep.multi_index import MAX_NORM, MultiIndexSet, hyperbolic_set
from pcedep.schemas import ExperimentConfig, ExperimentName, MomentSpace, StrategyKind, TargetSpace
from pcedep.surrogate import (
    DOMINATION_PROBES,
    PceSurrogate,
    StrategySpec,
    domination_constant,
    gauss_interpolant,
)
from pcedep.transform import NatafTransform
from pcedep.univariate_poly import PolyFamily
from scripts.experiments.base import Problem, TrialSeeds
from scripts.experiments.registry import register_experiment
from scripts.experiments.scenarios.common import int_option
from scripts.experiments.scenarios.genz import GenzExperiment

OMEGA_BETA = (10.0, 10.0)


class GaussDominationExperiment(GenzExperiment):
    """Interpolate at the ``(p+1)^d`` Gauss nodes of each strategy's family instead of Leja points."""

    def make_density(self) -> JointDensity:
        return tensor_beta_density(*OMEGA_BETA, self.dimension)

    def index_set(self, dimension: int, degree: int) -> MultiIndexSet:
        return hyperbolic_set(dimension, degree, MAX_NORM)

    def fit(
        self,
        spec: StrategySpec,
        problem: Problem,
        index_set: MultiIndexSet,
        config: ExperimentConfig,
        seeds: TrialSeeds,
    ) -> PceSurrogate:
        degree = int(index_set.max_degrees().max())
        dimension = problem.density.dimension
        if spec.kind is StrategyKind.DOM:
            families = [PolyFamily.jacobi(spec.alpha, spec.beta)] * dimension
            exact = (spec.alpha, spec.beta) == OMEGA_BETA
            space = MomentSpace.OMEGA if exact else MomentSpace.DOMINATING
            return gauss_interpolant(families, degree, problem.model, spec, moment_space=space)
        if spec.kind is StrategyKind.NATAF:
            transform = NatafTransform.from_density(problem.density, spec.target)
            if spec.target is TargetSpace.GAUSS:
                families = [PolyFamily.hermite()] * dimension
            else:
                families = [PolyFamily.legendre(-1.0, 1.0)] * dimension
            surrogate = gauss_interpolant(
                families,
                degree,
                lambda u: problem.model(transform.inverse(u)),
                spec,
                moment_space=MomentSpace.U_SPACE,
            )
            return dataclasses.replace(surrogate, transform=transform)
        msg = f"{self.name} interpolates at Gauss nodes and has no {spec.kind.value} pipeline"
        raise NotImplementedError(msg)

    def domination(self, spec: StrategySpec, problem: Problem, seeds: TrialSeeds) -> float | None:
        if spec.kind is not StrategyKind.DOM:
            return None
        dominating = tensor_beta_density(spec.alpha, spec.beta, problem.density.dimension)
        probes = int_option(self.options, "probes", DOMINATION_PROBES)
        return domination_constant(problem.density, dominating, probes=probes, seed=seeds.fit).value


@register_experiment(ExperimentName.GENZ1D_BASIS)
class BasisComparisonExperiment(GaussDominationExperiment):
    name = "genz1d-basis"
    dimension = 1
    with_reference_mean = True
    default_degrees = tuple(range(1, 21))
    default_strategies = ("dom(10,10)", "dom(1,1)", "nataf(uniform)")


@register_experiment(ExperimentName.CR_STUDY)
class DominationSweepExperiment(GaussDominationExperiment):
    name = "cr-study"
    dimension = 3
    default_degrees = tuple(range(1, 9))
    default_strategies = tuple(f"dom({beta},{beta})" for beta in (1, 2, 4, 6, 8, 10))
