from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Any, ClassVar, Protocol

import numpy as np
from numpy.typing import NDArray

from pcedep.config import Config
from pcedep.exceptions import IllPosedOrthogonalizationError
from pcedep.measure import JointDensity
from pcedep.models import Model
from pcedep.multi_index import MultiIndexSet, total_degree_set
from pcedep.schemas import ExperimentConfig, MomentSpace, ResultRow
from pcedep.surrogate import PceSurrogate, StrategySpec, fit_strategy, l2_error, relative_mean_error

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Problem:
    """One trial's density, model, test set and optional reference mean."""

    density: JointDensity
    model: Model
    test_points: NDArray[np.float64]
    test_values: NDArray[np.float64]
    reference_mean: float | None = None
    candidates: NDArray[np.float64] | None = None
    metadata: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class TrialSeeds:
    """Independent streams for the problem draw, the test set and the fits of one trial."""

    trial: int
    problem: np.random.SeedSequence
    test: np.random.SeedSequence
    fit: np.random.SeedSequence

    @classmethod
    def for_trial(cls, seed: int) -> TrialSeeds:
        problem, test, fit = np.random.SeedSequence(seed).spawn(3)
        return cls(seed, problem, test, fit)


def trial_seeds(seed: int, trials: int) -> list[int]:
    return [seed + trial for trial in range(trials)]


class Experiment(Protocol):
    """Common interface for registered experiments."""

    name: str
    options: dict[str, Any]
    default_degrees: ClassVar[tuple[int, ...]]
    default_strategies: ClassVar[tuple[str, ...]]
    default_test_samples: ClassVar[int]

    def run_trial(self, config: ExperimentConfig, seed: int) -> list[ResultRow]:
        ...


class BaseExperiment:
    """Base class with explicit unsupported-operation errors."""

    name = "experiment"
    default_degrees: ClassVar[tuple[int, ...]] = ()
    default_strategies: ClassVar[tuple[str, ...]] = ()
    default_test_samples: ClassVar[int] = Config.TEST_SAMPLES

    def __init__(self, options: dict[str, Any] | None = None) -> None:
        self.options = dict(options or {})

    def run_trial(self, config: ExperimentConfig, seed: int) -> list[ResultRow]:
        msg = f"{self.name} does not implement run_trial()"
        raise NotImplementedError(msg)


class ConvergenceExperiment(BaseExperiment):
    """Sweep degrees for every strategy on one problem per trial."""

    def build_problem(self, config: ExperimentConfig, seeds: TrialSeeds) -> Problem:
        msg = f"{self.name} does not implement build_problem()"
        raise NotImplementedError(msg)

    def index_set(self, dimension: int, degree: int) -> MultiIndexSet:
        return total_degree_set(dimension, degree)

    def fit(
        self,
        spec: StrategySpec,
        problem: Problem,
        index_set: MultiIndexSet,
        config: ExperimentConfig,
        seeds: TrialSeeds,
    ) -> PceSurrogate:
        candidates = config.candidates if problem.candidates is None else problem.candidates
        return fit_strategy(spec, problem.density, index_set, problem.model, candidates=candidates, seed=seeds.fit)

    def domination(self, spec: StrategySpec, problem: Problem, seeds: TrialSeeds) -> float | None:
        return None

    def mean_error(self, surrogate: PceSurrogate, problem: Problem) -> float | None:
        # Dominating-measure coefficients are not moments of ω.
        if problem.reference_mean is None or surrogate.moment_space is MomentSpace.DOMINATING:
            return None
        return relative_mean_error(surrogate.moments().mean, problem.reference_mean)

    def run_trial(self, config: ExperimentConfig, seed: int) -> list[ResultRow]:
        seeds = TrialSeeds.for_trial(seed)
        problem = self.build_problem(config, seeds)
        rows: list[ResultRow] = []
        for label in config.strategies:
            spec = StrategySpec.parse(label)
            c_r = self.domination(spec, problem, seeds)
            for degree in config.degrees:
                index_set = self.index_set(problem.density.dimension, degree)
                if spec.rule_size is not None and spec.rule_size < len(index_set):
                    logger.info(
                        "Stopping %s at degree %d: %d nodes < %d basis functions",
                        label,
                        degree,
                        spec.rule_size,
                        len(index_set),
                    )
                    break
                start = time.monotonic()
                try:
                    surrogate = self.fit(spec, problem, index_set, config, seeds)
                except IllPosedOrthogonalizationError as exc:
                    logger.warning("Skipping %s at degree %d (seed %d): %s", label, degree, seed, exc)
                    continue
                elapsed_ms = (time.monotonic() - start) * 1000
                diagnostics = surrogate.diagnostics()
                rows.append(
                    ResultRow(
                        experiment=self.name,
                        strategy=spec.label,
                        seed=seed,
                        degree_or_level=degree,
                        n_samples=surrogate.sample_count,
                        l2_error=l2_error(
                            problem.model, surrogate, problem.test_points, reference=problem.test_values
                        ),
                        mean_rel_error=self.mean_error(surrogate, problem),
                        kappa_phi=diagnostics["kappa_phi"],
                        kappa_gs=diagnostics["kappa_gs"],
                        kappa_q=diagnostics["kappa_q"],
                        c_r=c_r,
                        wall_ms=elapsed_ms if config.record_timings else None,
                    )
                )
        return rows
