"""Weighted Leja sequences from a truncated row-pivoted LU factorization.

The preconditioned candidate Vandermonde ``V Φ`` is eliminated with explicit
outer-product Schur updates, so the m-th pivot magnitude is the growth of the
weighted Vandermonde determinant when the m-th point is added.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import solve_triangular, svdvals

from pcedep.basis import PolynomialBasis, as_points, christoffel
from pcedep.config import Config
from pcedep.exceptions import DegenerateRuleError, InvalidArgumentError, UnisolvenceError
from pcedep.schemas import LejaExport, WeightKind

if TYPE_CHECKING:
    from pcedep.measure import JointDensity

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12


def christoffel_weight(basis: PolynomialBasis, points: ArrayLike) -> NDArray[np.float64]:
    """Root inverse of the Christoffel function, ``1 / sqrt(k(z))``."""
    return 1.0 / np.sqrt(christoffel(basis, points))


def leja_weights(
    basis: PolynomialBasis,
    points: NDArray[np.float64],
    weight_kind: WeightKind,
    density: JointDensity | None = None,
) -> NDArray[np.float64]:
    if weight_kind is WeightKind.CHRISTOFFEL:
        return christoffel_weight(basis, points)
    if weight_kind is WeightKind.SQRT_DENSITY:
        if density is None:
            msg = "sqrt-density weights need the density"
            raise InvalidArgumentError(msg)
        return np.sqrt(density.density(points))
    return np.ones(points.shape[0])


@dataclass(frozen=True, eq=False)
class LejaSequence:
    basis: PolynomialBasis
    points: NDArray[np.float64]
    pivots: NDArray[np.int64]
    lower: NDArray[np.float64]
    upper: NDArray[np.float64]
    weight_values: NDArray[np.float64]
    weight_kind: WeightKind
    provenance: str = ""

    def __len__(self) -> int:
        return int(self.pivots.size)

    @property
    def square(self) -> bool:
        return len(self) == self.basis.size

    def weighted_vandermonde(self) -> NDArray[np.float64]:
        return self.weight_values[:, None] * self.basis.evaluate(self.points)

    def to_export(self, *, seed: int | None = None) -> LejaExport:
        kappa_q = kappa_quadrature(quadrature_weights(self)) if self.square else None
        return LejaExport(
            points=self.points.tolist(),
            pivots=self.pivots.tolist(),
            weight_kind=self.weight_kind,
            kappa_phi=kappa_vandermonde(self),
            kappa_q=kappa_q,
            seed=seed,
            candidates=self.provenance,
        )


def _select_pivot(column: NDArray[np.float64], candidate_ids: NDArray[np.int64]) -> int:
    """Largest magnitude, ties within a relative 1e-12 going to the smallest candidate index."""
    magnitude = np.abs(column)
    peak = magnitude.max()
    tied = np.flatnonzero(magnitude >= peak * (1 - TIE_TOLERANCE))
    return int(tied[np.argmin(candidate_ids[tied])])


def build_leja(
    basis: PolynomialBasis,
    candidates: ArrayLike,
    count: int | None = None,
    weight_kind: WeightKind = WeightKind.CHRISTOFFEL,
    *,
    density: JointDensity | None = None,
    provenance: str = "",
    pivot_tolerance: float | None = None,
) -> LejaSequence:
    """Select ``count`` candidates by ``count`` steps of row-pivoted LU on ``V Φ``."""
    tolerance = Config.PIVOT_TOLERANCE if pivot_tolerance is None else pivot_tolerance
    pool = as_points(candidates, basis.dimension)
    size = basis.size
    steps = size if count is None else count
    if steps < 1 or steps > size:
        msg = f"sequence length must be in [1, {size}], got {steps}"
        raise InvalidArgumentError(msg)
    if pool.shape[0] < steps:
        msg = f"{pool.shape[0]} candidates cannot supply {steps} points"
        raise InvalidArgumentError(msg)

    weights = leja_weights(basis, pool, weight_kind, density)
    work = weights[:, None] * basis.evaluate(pool)
    order = np.arange(pool.shape[0])
    for step in range(steps):
        offset = _select_pivot(work[step:, step], order[step:])
        row = step + offset
        if row != step:
            work[[step, row]] = work[[row, step]]
            order[[step, row]] = order[[row, step]]
        pivot = work[step, step]
        if abs(pivot) < tolerance:
            raise UnisolvenceError(step + 1, abs(pivot))
        multipliers = work[step + 1 :, step] / pivot
        work[step + 1 :, step + 1 :] -= np.outer(multipliers, work[step, step + 1 :])
        work[step + 1 :, step] = multipliers

    head = work[:steps]
    lower = np.tril(head[:, :steps], -1) + np.eye(steps)
    upper = np.triu(head)
    pivots = order[:steps].copy()
    logger.info("Selected %d Leja points from %d candidates (%s weight)", steps, pool.shape[0], weight_kind.value)
    return LejaSequence(
        basis=basis,
        points=pool[pivots],
        pivots=pivots,
        lower=lower,
        upper=upper,
        weight_values=weights[pivots],
        weight_kind=weight_kind,
        provenance=provenance,
    )


def _require_square(seq: LejaSequence) -> None:
    if not seq.square:
        msg = f"interpolation needs as many points as basis functions ({len(seq)} != {seq.basis.size})"
        raise InvalidArgumentError(msg)


def interpolate(seq: LejaSequence, values: ArrayLike) -> NDArray[np.float64]:
    """Coefficients ``α`` with ``Σ α_n φ_n(z_m) = y_m`` at every sequence point."""
    _require_square(seq)
    y = np.asarray(values, dtype=float).ravel()
    if y.size != len(seq):
        msg = f"expected {len(seq)} values, got {y.size}"
        raise InvalidArgumentError(msg)
    forward = solve_triangular(seq.lower, seq.weight_values * y, lower=True, unit_diagonal=True)
    return solve_triangular(seq.upper[:, : len(seq)], forward, lower=False)


def quadrature_weights(seq: LejaSequence) -> NDArray[np.float64]:
    """First row of the inverse Vandermonde, so ``Σ v_n f(z_n)`` returns the constant coefficient."""
    _require_square(seq)
    size = len(seq)
    unit = np.zeros(size)
    unit[0] = 1.0
    first = solve_triangular(seq.upper[:, :size], unit, trans="T", lower=False)
    second = solve_triangular(seq.lower, first, trans="T", lower=True, unit_diagonal=True)
    return seq.weight_values * second


def kappa_quadrature(weights: ArrayLike) -> float:
    values = np.asarray(weights, dtype=float)
    total = float(values.sum())
    if total <= 0:
        msg = f"quadrature weights sum to {total:.3e}"
        raise DegenerateRuleError(msg)
    return float(np.abs(values).sum() / total)


def kappa_vandermonde(seq: LejaSequence) -> float:
    """σ_max / σ_min of ``V Φ`` on the selected points; ``inf`` when singular."""
    singular = svdvals(seq.weighted_vandermonde())
    if singular[-1] == 0:
        return math.inf
    return float(singular[0] / singular[-1])
