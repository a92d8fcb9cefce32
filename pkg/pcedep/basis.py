"""Multivariate polynomial bases, Vandermonde assembly and Gram-Schmidt orthogonalization."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import qr, solve_triangular, svdvals
from scipy.stats import qmc

from pcedep.config import Config
from pcedep.exceptions import IllPosedOrthogonalizationError, InvalidArgumentError, ZeroDensityError
from pcedep.schemas import RuleKind
from pcedep.univariate_poly import PolyFamily, QuadratureRule, evaluate_univariate, tensor_gauss_rule

if TYPE_CHECKING:
    from pcedep.measure import JointDensity
    from pcedep.multi_index import MultiIndexSet

logger = logging.getLogger(__name__)


def as_points(points: ArrayLike, dimension: int) -> NDArray[np.float64]:
    """Coerce ``points`` to an ``(M, dimension)`` float matrix."""
    array = np.asarray(points, dtype=float)
    if array.ndim == 1:
        array = array.reshape(-1, 1) if dimension == 1 else array.reshape(1, -1)
    if array.ndim != 2 or array.shape[1] != dimension:
        msg = f"expected points of dimension {dimension}, got shape {array.shape}"
        raise InvalidArgumentError(msg)
    return array


@dataclass(frozen=True, eq=False)
class TensorBasis:
    index_set: MultiIndexSet
    families: tuple[PolyFamily, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "families", tuple(self.families))
        if len(self.families) != self.index_set.dimension:
            msg = f"{len(self.families)} families for an index set of dimension {self.index_set.dimension}"
            raise InvalidArgumentError(msg)

    @property
    def dimension(self) -> int:
        return self.index_set.dimension

    @property
    def size(self) -> int:
        return len(self.index_set)

    @property
    def orthonormal(self) -> bool:
        return all(family.orthonormal for family in self.families)

    def evaluate(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        values = np.ones((array.shape[0], self.size))
        for axis, (family, max_degree) in enumerate(zip(self.families, self.index_set.max_degrees(), strict=True)):
            table = evaluate_univariate(family, int(max_degree), array[:, axis])
            values *= table[:, self.index_set.indices[:, axis]]
        return values


@dataclass(frozen=True, eq=False)
class OrthogonalizedBasis:
    """Tensor basis composed with an upper-triangular change of basis ``R^{-1}``."""

    source: TensorBasis
    change_of_basis: NDArray[np.float64]
    gs_condition: float
    quadrature_used: RuleKind
    quadrature_size: int
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def index_set(self) -> MultiIndexSet:
        return self.source.index_set

    @property
    def families(self) -> tuple[PolyFamily, ...]:
        return self.source.families

    @property
    def dimension(self) -> int:
        return self.source.dimension

    @property
    def size(self) -> int:
        return self.source.size

    @property
    def orthonormal(self) -> bool:
        return True

    def evaluate(self, points: ArrayLike) -> NDArray[np.float64]:
        return self.source.evaluate(points) @ self.change_of_basis


PolynomialBasis = TensorBasis | OrthogonalizedBasis


def assemble_vandermonde(basis: PolynomialBasis, points: ArrayLike) -> NDArray[np.float64]:
    """``(M, N)`` matrix with entry ``(m, n) = φ_n(z_m)``."""
    return basis.evaluate(points)


def _weighted_moment_matrix(tensor: TensorBasis, rule: QuadratureRule) -> NDArray[np.float64]:
    if rule.dimension != tensor.dimension:
        msg = f"rule of dimension {rule.dimension} for a basis of dimension {tensor.dimension}"
        raise InvalidArgumentError(msg)
    if np.any(rule.weights < 0):
        msg = "orthogonalization needs non-negative quadrature weights"
        raise InvalidArgumentError(msg)
    total = rule.weights.sum()
    if not total > 0:
        msg = "quadrature weights must have a positive sum"
        raise InvalidArgumentError(msg)
    # Unit mass keeps the first orthonormal function identically one.
    root = np.sqrt(rule.weights / total)
    return root[:, None] * tensor.evaluate(rule.nodes)


def _condition(matrix: NDArray[np.float64]) -> float:
    singular = svdvals(matrix)
    if singular.size == 0 or singular[-1] == 0:
        return math.inf
    return float(singular[0] / singular[-1])


def gram_schmidt_orthogonalize(
    tensor: TensorBasis,
    rule: QuadratureRule,
    *,
    rank_tolerance: float | None = None,
) -> OrthogonalizedBasis:
    """Orthonormalize ``tensor`` against the discrete measure of ``rule`` by Householder QR."""
    tolerance = Config.RANK_TOLERANCE if rank_tolerance is None else rank_tolerance
    moments = _weighted_moment_matrix(tensor, rule)
    size = tensor.size
    if moments.shape[0] < size:
        msg = f"{moments.shape[0]} quadrature nodes cannot orthogonalize {size} basis functions"
        raise InvalidArgumentError(msg)

    _q, upper = qr(moments, mode="economic")
    signs = np.where(np.diag(upper) < 0, -1.0, 1.0)
    upper = signs[:, None] * upper
    diagonal = np.abs(np.diag(upper))
    ratios = diagonal / diagonal[0] if diagonal[0] > 0 else np.zeros_like(diagonal)
    deficient = np.flatnonzero(ratios < tolerance)
    if deficient.size:
        index = int(deficient[0])
        offending = tuple(int(entry) for entry in tensor.index_set.indices[index])
        raise IllPosedOrthogonalizationError(index, offending, float(ratios[index]))

    change = solve_triangular(upper, np.eye(size), lower=False)
    kappa = _condition(moments)
    logger.info("Orthogonalized %d basis functions on %d nodes (kappa_gs=%.3e)", size, moments.shape[0], kappa)
    if kappa > 1e8:
        logger.warning("Moment matrix is badly conditioned (kappa_gs=%.3e)", kappa)
    return OrthogonalizedBasis(
        source=tensor,
        change_of_basis=change,
        gs_condition=kappa,
        quadrature_used=rule.description,
        quadrature_size=len(rule),
        metadata=dict(rule.metadata),
    )


def moment_condition_number(tensor: TensorBasis, rule: QuadratureRule) -> float:
    """σ_max / σ_min of the weighted Vandermonde ``sqrt(W) Ψ``; ``inf`` when singular."""
    return _condition(_weighted_moment_matrix(tensor, rule))


def density_ratio_quadrature(
    dominating_rule: QuadratureRule,
    target_density: JointDensity,
    dominating_density: JointDensity,
) -> QuadratureRule:
    """Reweight a rule for ``ν`` into a rule for ``ω`` with ``w ← v · ω / ν``."""
    nu = dominating_density.density(dominating_rule.nodes)
    zero = np.flatnonzero(nu <= 0)
    if zero.size:
        raise ZeroDensityError(int(zero[0]))
    omega = target_density.density(dominating_rule.nodes)
    return QuadratureRule(
        nodes=dominating_rule.nodes,
        weights=dominating_rule.weights * omega / nu,
        description=dominating_rule.description,
        metadata={**dominating_rule.metadata, "reweighted": True},
    )


def box_gauss_rule(lower: ArrayLike, upper: ArrayLike, order: int) -> QuadratureRule:
    """Tensor Gauss-Legendre rule for the uniform probability measure on a box."""
    lo = np.asarray(lower, dtype=float)
    hi = np.asarray(upper, dtype=float)
    families = [PolyFamily.legendre(float(a), float(b)) for a, b in zip(lo, hi, strict=True)]
    return tensor_gauss_rule(families, [order] * lo.size)


def monte_carlo_rule(samples: ArrayLike, size: int | None = None) -> QuadratureRule:
    """Equal-weight rule over the first ``size`` samples."""
    nodes = np.asarray(samples, dtype=float)
    if nodes.ndim == 1:
        nodes = nodes.reshape(-1, 1)
    if size is not None:
        if size < 1 or size > nodes.shape[0]:
            msg = f"size must be in [1, {nodes.shape[0]}], got {size}"
            raise InvalidArgumentError(msg)
        nodes = nodes[:size]
    if nodes.shape[0] < 1:
        msg = "at least one sample is required"
        raise InvalidArgumentError(msg)
    count = nodes.shape[0]
    return QuadratureRule(
        nodes=nodes,
        weights=np.full(count, 1.0 / count),
        description=RuleKind.MONTE_CARLO,
        metadata={"size": count},
    )


def _sobol_points(dimension: int, count: int, seed: int | np.random.SeedSequence | None) -> NDArray[np.float64]:
    sampler = qmc.Sobol(d=dimension, scramble=True, seed=np.random.default_rng(seed))
    exponent = int(math.log2(count)) if count > 0 else 0
    if 2**exponent == count:
        return sampler.random_base2(exponent)
    return sampler.random(count)


def sobol_rule(
    lower: ArrayLike,
    upper: ArrayLike,
    count: int,
    *,
    seed: int | np.random.SeedSequence | None = None,
    density: JointDensity | None = None,
) -> QuadratureRule:
    """Scrambled Sobol rule on a box.

    Without a density the weights are ``1/J`` (uniform probability measure);
    with one they are ``vol · ω(z) / J`` so the rule integrates against ``ω``.
    """
    if count < 1:
        msg = f"count must be >= 1, got {count}"
        raise InvalidArgumentError(msg)
    lo = np.asarray(lower, dtype=float)
    hi = np.asarray(upper, dtype=float)
    if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
        msg = "Sobol rules need a finite box"
        raise InvalidArgumentError(msg)
    nodes = qmc.scale(_sobol_points(lo.size, count, seed), lo, hi)
    weights = np.full(count, 1.0 / count)
    if density is not None:
        weights = weights * float(np.prod(hi - lo)) * density.density(nodes)
    return QuadratureRule(nodes=nodes, weights=weights, description=RuleKind.SOBOL, metadata={"size": count})


def projected_sobol_rule(
    projection: ArrayLike,
    count: int,
    *,
    lower: float = 0.0,
    upper: float = 1.0,
    seed: int | np.random.SeedSequence | None = None,
) -> QuadratureRule:
    """Sobol points of the hypercube ``[lower, upper]^d`` pushed through ``A``, weights ``1/J``."""
    matrix = np.atleast_2d(np.asarray(projection, dtype=float))
    cube = lower + (upper - lower) * _sobol_points(matrix.shape[1], count, seed)
    return QuadratureRule(
        nodes=cube @ matrix.T,
        weights=np.full(count, 1.0 / count),
        description=RuleKind.SOBOL,
        metadata={"size": count, "projected_from": int(matrix.shape[1])},
    )


def christoffel(basis: PolynomialBasis, points: ArrayLike) -> NDArray[np.float64]:
    """``k(z) = Σ φ_λ(z)^2`` over the basis in force."""
    return np.sum(basis.evaluate(points) ** 2, axis=1)
