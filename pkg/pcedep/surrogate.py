"""PCE surrogates, their error metrics and the three fitting pipelines.

A strategy label selects the pipeline:

* ``gs(a,b)`` / ``gs(monomial)``: orthogonalize a tensor basis against ω, then
  build Leja points for the orthogonalized basis;
* ``dom(a,b)``: tensor Jacobi basis for a dominating Beta(a, b) measure;
* ``nataf(gauss)`` / ``nataf(uniform)``: tensor Hermite or Legendre basis in
  the independent space of the Nataf map.

GS labels accept a ``/mcJ`` or ``/sobolJ`` suffix overriding the quadrature
rule used for orthogonalization.
"""

from __future__ import annotations

import logging
import math
import re
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray

from pcedep.basis import (
    OrthogonalizedBasis,
    PolynomialBasis,
    TensorBasis,
    as_points,
    box_gauss_rule,
    density_ratio_quadrature,
    gram_schmidt_orthogonalize,
    monte_carlo_rule,
    sobol_rule,
)
from pcedep.config import Config
from pcedep.exceptions import DegenerateRuleError, InvalidArgumentError, UnsupportedError
from pcedep.leja import LejaSequence, build_leja, interpolate, kappa_quadrature, kappa_vandermonde, quadrature_weights
from pcedep.measure import JointDensity, Marginal, Seed, TensorDensity, mixed_candidates, spawn_seeds
from pcedep.multi_index import MAX_NORM, MultiIndexSet, hyperbolic_set
from pcedep.schemas import MomentSpace, RuleKind, StrategyKind, SurrogateExport, TargetSpace, WeightKind
from pcedep.transform import NatafTransform
from pcedep.univariate_poly import PolyFamily, QuadratureRule, tensor_gauss_rule

logger = logging.getLogger(__name__)

Model = Callable[[NDArray[np.float64]], NDArray[np.float64]]

DOMINATION_PROBES = 100_000
MC_RULE_FACTOR = 20
MC_RULE_MINIMUM = 10_000
GAUSS_ORDER_BY_DIMENSION = {1: 50, 2: 50, 3: 25}

_LABEL = re.compile(
    r"^(?P<kind>gs|dom|nataf)\((?P<args>[^)]*)\)(?:/(?P<rule>mc|sobol)(?P<size>\d+))?$",
)


@dataclass(frozen=True)
class StrategySpec:
    kind: StrategyKind
    alpha: float = 1.0
    beta: float = 1.0
    monomial: bool = False
    target: TargetSpace = TargetSpace.GAUSS
    rule: RuleKind | None = None
    rule_size: int | None = None

    @classmethod
    def parse(cls, label: str) -> StrategySpec:
        """Parse ``gs(1,1)``, ``gs(monomial)/mc1000``, ``dom(2,5)``, ``nataf(uniform)`` and friends."""
        match = _LABEL.match(label.replace(" ", ""))
        if match is None:
            msg = f"Unknown strategy {label!r}. Expected gs(a,b), gs(monomial), dom(a,b) or nataf(gauss|uniform)"
            raise InvalidArgumentError(msg)
        kind = StrategyKind(match["kind"])
        args = match["args"]
        rule = None
        size = None
        if match["rule"]:
            if kind is not StrategyKind.GS:
                msg = f"only gs strategies take a quadrature suffix, got {label!r}"
                raise InvalidArgumentError(msg)
            rule = RuleKind.MONTE_CARLO if match["rule"] == "mc" else RuleKind.SOBOL
            size = int(match["size"])
        if kind is StrategyKind.NATAF:
            try:
                return cls(kind, target=TargetSpace(args))
            except ValueError:
                msg = f"nataf target must be gauss or uniform, got {args!r}"
                raise InvalidArgumentError(msg) from None
        if kind is StrategyKind.GS and args == "monomial":
            return cls(kind, monomial=True, rule=rule, rule_size=size)
        try:
            alpha, beta = (float(value) for value in args.split(","))
        except ValueError:
            msg = f"expected two Beta parameters in {label!r}"
            raise InvalidArgumentError(msg) from None
        if alpha <= 0 or beta <= 0:
            msg = f"Beta parameters must be positive in {label!r}"
            raise InvalidArgumentError(msg)
        return cls(kind, alpha, beta, rule=rule, rule_size=size)

    @property
    def label(self) -> str:
        if self.kind is StrategyKind.NATAF:
            return f"nataf({self.target.value})"
        args = "monomial" if self.monomial else f"{self.alpha:g},{self.beta:g}"
        suffix = ""
        if self.rule is not None:
            suffix = f"/{'mc' if self.rule is RuleKind.MONTE_CARLO else 'sobol'}{self.rule_size}"
        return f"{self.kind.value}({args}){suffix}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    space: MomentSpace


@dataclass(frozen=True)
class DominationEstimate:
    """Largest ``ω / g`` seen on the probes; a lower bound on the true supremum."""

    value: float
    probe_count: int


@dataclass(frozen=True, eq=False)
class PceSurrogate:
    basis: PolynomialBasis
    coefficients: NDArray[np.float64]
    strategy: StrategySpec
    transform: NatafTransform | None = None
    leja: LejaSequence | None = None
    moment_space: MomentSpace = MomentSpace.OMEGA
    sample_count: int = 0
    metadata: dict[str, Any] = field(default_factory=dict)

    def evaluate(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.basis.dimension)
        if self.transform is not None:
            array = self.transform.forward(array)
        return self.basis.evaluate(array) @ self.coefficients

    def moments(self) -> Moments:
        """Mean and variance read off the coefficients, tagged with the measure they refer to."""
        if not self.basis.orthonormal:
            msg = "analytic moments need an orthonormal basis; use sampled_moments()"
            raise UnsupportedError(msg)
        zero = self.basis.index_set.position((0,) * self.basis.dimension)
        if zero != 0:
            msg = "the constant function must come first in the index set"
            raise UnsupportedError(msg)
        mean = float(self.coefficients[0])
        variance = float(np.sum(self.coefficients**2) - mean**2)
        return Moments(mean=mean, variance=variance, space=self.moment_space)

    def diagnostics(self) -> dict[str, float | None]:
        """Condition numbers of the fit; ``inf`` flags a degenerate quadrature."""
        result: dict[str, float | None] = {"kappa_phi": None, "kappa_gs": None, "kappa_q": None}
        if isinstance(self.basis, OrthogonalizedBasis):
            result["kappa_gs"] = self.basis.gs_condition
        if self.leja is not None:
            result["kappa_phi"] = kappa_vandermonde(self.leja)
            if self.leja.square:
                try:
                    result["kappa_q"] = kappa_quadrature(quadrature_weights(self.leja))
                except DegenerateRuleError as exc:
                    logger.warning("%s", exc)
                    result["kappa_q"] = math.inf
        return result

    def to_export(self, *, seed: int | None = None) -> SurrogateExport:
        moments = self.moments()
        orthogonalized = isinstance(self.basis, OrthogonalizedBasis)
        return SurrogateExport(
            strategy=self.strategy.label,
            index_set=self.basis.index_set.indices.tolist(),
            families=[family.describe() for family in self.basis.families],
            coefficients=self.coefficients.tolist(),
            change_of_basis=self.basis.change_of_basis.tolist() if orthogonalized else None,
            kappa_gs=self.basis.gs_condition if orthogonalized else None,
            mean=moments.mean,
            variance=moments.variance,
            moment_space=moments.space,
            seed=seed,
        )


def evaluate(surrogate: PceSurrogate, points: ArrayLike) -> NDArray[np.float64]:
    return surrogate.evaluate(points)


def moments(surrogate: PceSurrogate) -> Moments:
    return surrogate.moments()


def sampled_moments(surrogate: PceSurrogate, samples: ArrayLike) -> Moments:
    """Mean and variance of the surrogate over samples of ω."""
    values = surrogate.evaluate(samples)
    if values.size == 0:
        msg = "sampled moments need at least one sample"
        raise InvalidArgumentError(msg)
    return Moments(mean=float(values.mean()), variance=float(values.var()), space=MomentSpace.OMEGA)


def l2_error(
    model: Model,
    surrogate: PceSurrogate,
    samples: ArrayLike,
    *,
    reference: ArrayLike | None = None,
) -> float:
    """Unnormalized root-mean-square difference over test samples of ω."""
    points = as_points(samples, surrogate.basis.dimension)
    if points.shape[0] == 0:
        msg = "the test set is empty"
        raise InvalidArgumentError(msg)
    truth = model(points) if reference is None else np.asarray(reference, dtype=float).ravel()
    return float(np.sqrt(np.mean((truth - surrogate.evaluate(points)) ** 2)))


def relative_mean_error(estimate: float, reference: float) -> float:
    if reference == 0:
        return abs(estimate)
    return abs(estimate - reference) / abs(reference)


def domination_constant(
    omega: JointDensity,
    g: JointDensity,
    *,
    probes: int = DOMINATION_PROBES,
    seed: Seed = None,
) -> DominationEstimate:
    """Estimate ``C_r = sup ω/g`` from ω-samples plus uniform samples of the support box."""
    omega_seed, uniform_seed = spawn_seeds(seed, 2)
    parts = [omega.sample(probes, omega_seed)]
    if omega.bounded:
        rng = np.random.default_rng(uniform_seed)
        parts.append(omega.lower + (omega.upper - omega.lower) * rng.random((probes, omega.dimension)))
    points = np.vstack(parts)
    numerator = omega.density(points)
    denominator = g.density(points)
    positive = numerator > 0
    if np.any(positive & (denominator <= 0)):
        return DominationEstimate(value=math.inf, probe_count=points.shape[0])
    ratios = numerator[positive] / denominator[positive]
    value = float(ratios.max()) if ratios.size else 0.0
    return DominationEstimate(value=value, probe_count=points.shape[0])


def lemma_bound(c_r: float, error_g: float) -> float:
    """Right-hand side ``sqrt(C_r) · ||f - f_N||_g`` bounding the ω-error."""
    return math.sqrt(c_r) * error_g


def _box_families(density: JointDensity, spec: StrategySpec) -> list[PolyFamily]:
    if not density.bounded:
        msg = f"{spec.label} needs a bounded support box"
        raise UnsupportedError(msg)
    if spec.monomial:
        return [PolyFamily.monomial(float(lo), float(hi)) for lo, hi in zip(density.lower, density.upper, strict=True)]
    return [
        PolyFamily.jacobi(spec.alpha, spec.beta, float(lo), float(hi))
        for lo, hi in zip(density.lower, density.upper, strict=True)
    ]


def default_gso_rule(
    density: JointDensity,
    basis_size: int,
    *,
    rule: RuleKind | None = None,
    size: int | None = None,
    seed: Seed = None,
) -> QuadratureRule:
    """Quadrature for ω used by Gram-Schmidt.

    Up to three dimensions a tensor Gauss-Legendre rule on the box is reweighted
    by ω over the uniform density; above that Monte Carlo with
    ``max(20 N, 10^4)`` samples of ω.
    """
    if rule is RuleKind.MONTE_CARLO:
        return monte_carlo_rule(density.sample(size or MC_RULE_MINIMUM, seed))
    if rule is RuleKind.SOBOL:
        return sobol_rule(density.lower, density.upper, size or MC_RULE_MINIMUM, seed=seed, density=density)
    order = GAUSS_ORDER_BY_DIMENSION.get(density.dimension)
    if order is None or not density.bounded:
        return monte_carlo_rule(density.sample(max(MC_RULE_FACTOR * basis_size, MC_RULE_MINIMUM), seed))
    uniform = TensorDensity(
        [Marginal.uniform(float(lo), float(hi)) for lo, hi in zip(density.lower, density.upper, strict=True)]
    )
    return density_ratio_quadrature(box_gauss_rule(density.lower, density.upper, order), density, uniform)


def _candidate_points(
    candidates: int | ArrayLike,
    measure: JointDensity,
    seed: np.random.SeedSequence,
) -> tuple[NDArray[np.float64], str]:
    if isinstance(candidates, int):
        return mixed_candidates(measure, candidates, seed), f"mixed:{candidates}"
    points = as_points(candidates, measure.dimension)
    return points, f"given:{points.shape[0]}"


@dataclass(frozen=True, eq=False)
class StrategyDesign:
    """Basis, Leja sequence and optional map of a pipeline, before any model evaluation."""

    spec: StrategySpec
    basis: PolynomialBasis
    sequence: LejaSequence
    moment_space: MomentSpace
    transform: NatafTransform | None = None
    quadrature: QuadratureRule | None = None

    def nodes(self) -> NDArray[np.float64]:
        """Points of the original space where the model has to be evaluated."""
        if self.transform is None:
            return self.sequence.points
        return self.transform.inverse(self.sequence.points)


def _build_sequence(
    basis: PolynomialBasis,
    candidates: int | ArrayLike,
    measure: JointDensity,
    seed: np.random.SeedSequence,
    weight_kind: WeightKind,
) -> LejaSequence:
    pool, provenance = _candidate_points(candidates, measure, seed)
    density = measure if weight_kind is WeightKind.SQRT_DENSITY else None
    return build_leja(basis, pool, weight_kind=weight_kind, density=density, provenance=provenance)


def design_strategy(
    strategy: StrategySpec | str,
    density: JointDensity,
    index_set: MultiIndexSet,
    *,
    candidates: int | ArrayLike = Config.CANDIDATES,
    seed: Seed = None,
    weight_kind: WeightKind = WeightKind.CHRISTOFFEL,
    rule: QuadratureRule | None = None,
) -> StrategyDesign:
    """Build the basis and Leja sequence of a GS, DOM or Nataf pipeline.

    ``candidates`` is either a candidate count (half Chebyshev, half samples of
    the pipeline's measure) or an explicit candidate matrix in the original
    space. ``rule`` overrides the Gram-Schmidt quadrature.
    """
    spec = StrategySpec.parse(strategy) if isinstance(strategy, str) else strategy
    if index_set.dimension != density.dimension:
        msg = f"index set of dimension {index_set.dimension} for a density of dimension {density.dimension}"
        raise InvalidArgumentError(msg)
    candidate_seed, rule_seed = spawn_seeds(seed, 2)

    if spec.kind is StrategyKind.NATAF:
        transform = NatafTransform.from_density(density, spec.target)
        if spec.target is TargetSpace.GAUSS:
            families = [PolyFamily.hermite()] * density.dimension
            target = TensorDensity([Marginal.normal()] * density.dimension)
        else:
            families = [PolyFamily.legendre(-1.0, 1.0)] * density.dimension
            target = TensorDensity([Marginal.uniform(-1.0, 1.0)] * density.dimension)
        pool = candidates if isinstance(candidates, int) else transform.forward(candidates)
        basis = TensorBasis(index_set, tuple(families))
        sequence = _build_sequence(basis, pool, target, candidate_seed, weight_kind)
        return StrategyDesign(spec, basis, sequence, MomentSpace.U_SPACE, transform=transform)

    tensor = TensorBasis(index_set, tuple(_box_families(density, spec)))
    if spec.kind is StrategyKind.DOM:
        dominating = TensorDensity(
            [
                Marginal.beta(spec.alpha, spec.beta, float(lo), float(hi))
                for lo, hi in zip(density.lower, density.upper, strict=True)
            ]
        )
        sequence = _build_sequence(tensor, candidates, dominating, candidate_seed, weight_kind)
        return StrategyDesign(spec, tensor, sequence, MomentSpace.DOMINATING)

    quadrature = rule or default_gso_rule(density, tensor.size, rule=spec.rule, size=spec.rule_size, seed=rule_seed)
    basis = gram_schmidt_orthogonalize(tensor, quadrature)
    sequence = _build_sequence(basis, candidates, density, candidate_seed, weight_kind)
    return StrategyDesign(spec, basis, sequence, MomentSpace.DISCRETE, quadrature=quadrature)


def fit_strategy(
    strategy: StrategySpec | str,
    density: JointDensity,
    index_set: MultiIndexSet,
    model: Model,
    *,
    candidates: int | ArrayLike = Config.CANDIDATES,
    seed: Seed = None,
    weight_kind: WeightKind = WeightKind.CHRISTOFFEL,
    rule: QuadratureRule | None = None,
) -> PceSurrogate:
    """Leja interpolant of ``model`` built with one of the GS, DOM or Nataf pipelines."""
    design = design_strategy(
        strategy,
        density,
        index_set,
        candidates=candidates,
        seed=seed,
        weight_kind=weight_kind,
        rule=rule,
    )
    values = np.asarray(model(design.nodes()), dtype=float).ravel()
    coefficients = interpolate(design.sequence, values)
    if design.quadrature is None:
        logger.info("Fitted %s with %d points", design.spec.label, len(design.sequence))
    else:
        logger.info(
            "Fitted %s with %d points (%d-node %s rule)",
            design.spec.label,
            len(design.sequence),
            len(design.quadrature),
            design.quadrature.description.value,
        )
    return PceSurrogate(
        basis=design.basis,
        coefficients=coefficients,
        strategy=design.spec,
        transform=design.transform,
        leja=design.sequence,
        moment_space=design.moment_space,
        sample_count=len(design.sequence),
    )


def gauss_interpolant(
    families: Sequence[PolyFamily],
    degree: int,
    model: Model,
    strategy: StrategySpec | str,
    *,
    moment_space: MomentSpace = MomentSpace.OMEGA,
) -> PceSurrogate:
    """Tensor interpolant at the ``(degree + 1)^d`` Gauss nodes of ``families``.

    Discrete orthonormality of the Gauss rule up to degree ``degree`` per axis
    turns interpolation into the projection ``α = Ψ^T W y``.
    """
    if degree < 0:
        msg = f"degree must be >= 0, got {degree}"
        raise InvalidArgumentError(msg)
    spec = StrategySpec.parse(strategy) if isinstance(strategy, str) else strategy
    dimension = len(families)
    rule = tensor_gauss_rule(list(families), [degree + 1] * dimension)
    basis = TensorBasis(hyperbolic_set(dimension, degree, MAX_NORM), tuple(families))
    vandermonde = basis.evaluate(rule.nodes)
    coefficients = vandermonde.T @ (rule.weights * np.asarray(model(rule.nodes), dtype=float).ravel())
    return PceSurrogate(
        basis=basis,
        coefficients=coefficients,
        strategy=spec,
        moment_space=moment_space,
        sample_count=len(rule),
        metadata={"rule": rule.description.value},
    )
