"""Maps between dependent variables ``Z`` and independent variables ``U``.

Nataf assumes a Gaussian copula: ``û_i = Φ^{-1}(F_i(z_i))`` is decorrelated
with ``u = L^{-1} û`` where ``L L^T = R_V``, and ``R_V`` is solved from the
target correlation ``R_Z`` of the marginals. Rosenblatt applies conditional
CDFs in the fixed coordinate order ``1..d``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Protocol

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import solve_triangular
from scipy.optimize import bisect
from scipy.special import ndtr, ndtri

from pcedep.basis import as_points
from pcedep.exceptions import (
    BoundaryError,
    ConvergenceError,
    InfeasibleCorrelationError,
    InvalidArgumentError,
    UnsupportedError,
)
from pcedep.measure import GaussianCopulaDensity, JointDensity, Marginal, TensorDensity, cholesky_factor
from pcedep.schemas import CorrelationExport, TargetSpace
from pcedep.univariate_poly import PolyFamily, gauss_rule

logger = logging.getLogger(__name__)

HERMITE_ORDER = 50
BRACKET_EPSILON = 1e-10
CORRELATION_RESIDUAL = 1e-8
BISECTION_ITERATIONS = 200
BISECTION_RESIDUAL = 1e-12
BISECTION_WIDTH = 1e-13
GAUSSIAN_TAIL = 37.0


class _NormalizedMarginal:
    """``(F^{-1}(Φ(x)) - μ) / σ`` with moments taken from the same Hermite rule."""

    def __init__(self, marginal: Marginal, nodes: NDArray[np.float64], weights: NDArray[np.float64]) -> None:
        self.marginal = marginal
        values = marginal.from_gaussian(nodes)
        self.mean = float(weights @ values)
        self.std = float(np.sqrt(weights @ (values - self.mean) ** 2))

    def __call__(self, x: NDArray[np.float64]) -> NDArray[np.float64]:
        return (self.marginal.from_gaussian(x) - self.mean) / self.std


def nataf_pair_correlation(
    rho_v: float,
    first: Marginal,
    second: Marginal,
    order: int = HERMITE_ORDER,
) -> float:
    """Correlation of ``(Z_i, Z_j)`` induced by Gaussian correlation ``rho_v``."""
    rule = gauss_rule(PolyFamily.hermite(), order)
    nodes = rule.nodes[:, 0]
    left = _NormalizedMarginal(first, nodes, rule.weights)
    right = _NormalizedMarginal(second, nodes, rule.weights)
    return _pair_integral(rho_v, left, right, nodes, rule.weights)


def _pair_integral(
    rho: float,
    left: _NormalizedMarginal,
    right: _NormalizedMarginal,
    nodes: NDArray[np.float64],
    weights: NDArray[np.float64],
) -> float:
    x = nodes[:, None]
    y = nodes[None, :]
    correlated = rho * x + math.sqrt(max(1.0 - rho * rho, 0.0)) * y
    integrand = left(np.broadcast_to(x, correlated.shape)) * right(correlated)
    return float(weights @ integrand @ weights)


def nataf_correlation_solve(
    r_z: ArrayLike,
    marginals: Sequence[Marginal],
    order: int = HERMITE_ORDER,
) -> NDArray[np.float64]:
    """Solve for the Gaussian correlation ``R_V`` reproducing ``R_Z`` pairwise."""
    target = np.atleast_2d(np.asarray(r_z, dtype=float))
    dimension = len(marginals)
    if target.shape != (dimension, dimension):
        msg = f"R_Z shape {target.shape} does not match {dimension} marginals"
        raise InvalidArgumentError(msg)
    if np.any(np.abs(target[~np.eye(dimension, dtype=bool)]) >= 1):
        msg = "off-diagonal target correlations must lie strictly inside (-1, 1)"
        raise InvalidArgumentError(msg)

    rule = gauss_rule(PolyFamily.hermite(), order)
    nodes = rule.nodes[:, 0]
    normalized = [_NormalizedMarginal(marginal, nodes, rule.weights) for marginal in marginals]
    r_v = np.eye(dimension)
    for i in range(dimension):
        for j in range(i + 1, dimension):
            goal = float(target[i, j])
            if goal == 0.0:
                continue

            def residual(rho: float, i: int = i, j: int = j, goal: float = goal) -> float:
                return _pair_integral(rho, normalized[i], normalized[j], nodes, rule.weights) - goal

            lo, hi = -1.0 + BRACKET_EPSILON, 1.0 - BRACKET_EPSILON
            if residual(lo) * residual(hi) > 0:
                raise InfeasibleCorrelationError((i, j), goal)
            root = bisect(residual, lo, hi, xtol=1e-15, maxiter=BISECTION_ITERATIONS)
            remaining = abs(residual(root))
            if remaining >= CORRELATION_RESIDUAL:
                msg = f"correlation solve for pair ({i}, {j}) did not converge"
                raise ConvergenceError(msg, remaining)
            r_v[i, j] = r_v[j, i] = root
    logger.info("Solved Nataf correlation for %d variables", dimension)
    return r_v


def nataf_correlation_forward(
    r_v: ArrayLike,
    marginals: Sequence[Marginal],
    order: int = HERMITE_ORDER,
) -> NDArray[np.float64]:
    """``R_Z`` implied by a Gaussian copula with correlation ``R_V``."""
    source = np.atleast_2d(np.asarray(r_v, dtype=float))
    rule = gauss_rule(PolyFamily.hermite(), order)
    nodes = rule.nodes[:, 0]
    normalized = [_NormalizedMarginal(marginal, nodes, rule.weights) for marginal in marginals]
    r_z = np.eye(len(marginals))
    for i in range(len(marginals)):
        for j in range(i + 1, len(marginals)):
            if source[i, j] != 0:
                value = _pair_integral(source[i, j], normalized[i], normalized[j], nodes, rule.weights)
                r_z[i, j] = r_z[j, i] = value
    return r_z


@dataclass(frozen=True, eq=False)
class NatafTransform:
    marginals: tuple[Marginal, ...]
    r_z: NDArray[np.float64]
    r_v: NDArray[np.float64]
    cholesky: NDArray[np.float64]
    target: TargetSpace = TargetSpace.GAUSS

    @classmethod
    def from_correlation(
        cls,
        marginals: Sequence[Marginal],
        r_z: ArrayLike,
        target: TargetSpace = TargetSpace.GAUSS,
        order: int = HERMITE_ORDER,
    ) -> NatafTransform:
        r_v = nataf_correlation_solve(r_z, marginals, order)
        return cls(tuple(marginals), np.asarray(r_z, dtype=float), r_v, cholesky_factor(r_v), target)

    @classmethod
    def from_density(cls, density: JointDensity, target: TargetSpace = TargetSpace.GAUSS) -> NatafTransform:
        """Exact transform for densities that already are Gaussian copulas."""
        if isinstance(density, GaussianCopulaDensity):
            r_v = density.correlation
            r_z = nataf_correlation_forward(r_v, density.marginals)
            return cls(density.marginals, r_z, r_v, density.cholesky, target)
        if isinstance(density, TensorDensity):
            identity = np.eye(density.dimension)
            return cls(density.marginals, identity, identity, identity, target)
        msg = f"Nataf needs marginals and a Gaussian copula; {density.name} provides neither"
        raise UnsupportedError(msg)

    @property
    def dimension(self) -> int:
        return len(self.marginals)

    def forward(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        gaussian = np.empty_like(array)
        for axis, marginal in enumerate(self.marginals):
            gaussian[:, axis] = marginal.to_gaussian(array[:, axis])
            if not np.all(np.isfinite(gaussian[:, axis])):
                raise BoundaryError(axis)
        independent = solve_triangular(self.cholesky, gaussian.T, lower=True).T
        if self.target is TargetSpace.UNIFORM:
            return 2 * ndtr(independent) - 1
        return independent

    def inverse(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        if self.target is TargetSpace.UNIFORM:
            # Near +1 the upper tail keeps precision.
            array = np.where(array <= 0, ndtri((array + 1) / 2), -ndtri((1 - array) / 2))
        gaussian = array @ self.cholesky.T
        return np.column_stack(
            [marginal.from_gaussian(gaussian[:, axis]) for axis, marginal in enumerate(self.marginals)]
        )

    def to_export(self) -> CorrelationExport:
        return CorrelationExport(
            marginals=[marginal.describe() for marginal in self.marginals],
            r_z=self.r_z.tolist(),
            r_v=self.r_v.tolist(),
        )


def nataf_forward(transform: NatafTransform, points: ArrayLike) -> NDArray[np.float64]:
    return transform.forward(points)


def nataf_inverse(transform: NatafTransform, points: ArrayLike) -> NDArray[np.float64]:
    return transform.inverse(points)


class ConditionalCdfProvider(Protocol):
    """Conditional CDFs ``F_{i | i-1..1}`` evaluated row-wise."""

    dimension: int

    def conditional_cdf(
        self,
        axis: int,
        prefix: NDArray[np.float64],
        values: NDArray[np.float64],
    ) -> NDArray[np.float64]:
        ...

    def bracket(self, axis: int) -> tuple[float, float]:
        ...


def _marginal_bracket(marginal: Marginal) -> tuple[float, float]:
    lower, upper = marginal.support
    if not math.isfinite(lower):
        lower = float(marginal.from_gaussian(-GAUSSIAN_TAIL))
    if not math.isfinite(upper):
        upper = float(marginal.from_gaussian(GAUSSIAN_TAIL))
    return lower, upper


class IndependentProvider:
    def __init__(self, marginals: Sequence[Marginal]) -> None:
        self.marginals = tuple(marginals)
        self.dimension = len(self.marginals)

    def conditional_cdf(
        self,
        axis: int,
        prefix: NDArray[np.float64],
        values: NDArray[np.float64],
    ) -> NDArray[np.float64]:
        return self.marginals[axis].cdf(values)

    def bracket(self, axis: int) -> tuple[float, float]:
        return _marginal_bracket(self.marginals[axis])


class GaussianCopulaProvider:
    """Analytic conditionals: ``û_i | û_{<i}`` is normal with Schur-complement variance."""

    def __init__(self, density: GaussianCopulaDensity) -> None:
        self.density = density
        self.dimension = density.dimension
        self._regression: list[tuple[NDArray[np.float64], float]] = []
        for axis in range(self.dimension):
            cross = density.correlation[axis, :axis]
            block = density.correlation[:axis, :axis]
            coefficients = np.linalg.solve(block, cross) if axis else np.zeros(0)
            variance = 1.0 - float(cross @ coefficients) if axis else 1.0
            self._regression.append((coefficients, math.sqrt(max(variance, 0.0))))

    def conditional_cdf(
        self,
        axis: int,
        prefix: NDArray[np.float64],
        values: NDArray[np.float64],
    ) -> NDArray[np.float64]:
        marginal = self.density.marginals[axis]
        gaussian = marginal.to_gaussian(values)
        coefficients, scale = self._regression[axis]
        if axis == 0:
            return ndtr(gaussian)
        conditioning = np.column_stack(
            [self.density.marginals[k].to_gaussian(prefix[:, k]) for k in range(axis)]
        )
        return ndtr((gaussian - conditioning @ coefficients) / scale)

    def bracket(self, axis: int) -> tuple[float, float]:
        return _marginal_bracket(self.density.marginals[axis])


class QuadratureProvider:
    """Generic two-dimensional conditionals by Gauss-Legendre marginalization on the support box."""

    def __init__(self, density: JointDensity, order: int = 128) -> None:
        if density.dimension != 2 or not density.bounded:
            msg = "quadrature marginalization is limited to two-dimensional bounded densities"
            raise UnsupportedError(msg)
        self.density = density
        self.dimension = 2
        rule = gauss_rule(PolyFamily.legendre(-1.0, 1.0), order)
        self._nodes = rule.nodes[:, 0]
        self._weights = rule.weights
        self._total = self._marginal_total()

    def _integrate_second(self, first: NDArray[np.float64], upper: NDArray[np.float64]) -> NDArray[np.float64]:
        """``∫_{lower_2}^{upper} ω(first, t) dt`` row-wise."""
        lower = self.density.lower[1]
        half = (upper - lower) / 2
        t = lower + half[:, None] * (self._nodes[None, :] + 1)
        grid = np.column_stack([np.repeat(first, self._nodes.size), t.ravel()])
        values = self.density.density(grid).reshape(first.size, self._nodes.size)
        return 2 * half * (values @ self._weights)

    def conditional_cdf(
        self,
        axis: int,
        prefix: NDArray[np.float64],
        values: NDArray[np.float64],
    ) -> NDArray[np.float64]:
        lower, upper = self.density.lower, self.density.upper
        if axis == 1:
            first = prefix[:, 0]
            numerator = self._integrate_second(first, np.clip(values, lower[1], upper[1]))
            denominator = self._integrate_second(first, np.full(first.size, upper[1]))
            with np.errstate(invalid="ignore", divide="ignore"):
                ratio = np.where(denominator > 0, numerator / denominator, 0.0)
            return np.clip(ratio, 0.0, 1.0)
        clipped = np.clip(values, lower[0], upper[0])
        half = (clipped - lower[0]) / 2
        s = lower[0] + half[:, None] * (self._nodes[None, :] + 1)
        marginal = self._integrate_second(s.ravel(), np.full(s.size, upper[1])).reshape(s.shape)
        return np.clip(2 * half * (marginal @ self._weights) / self._total, 0.0, 1.0)

    def _marginal_total(self) -> float:
        lower, upper = self.density.lower, self.density.upper
        s = lower[0] + (upper[0] - lower[0]) * (self._nodes + 1) / 2
        marginal = self._integrate_second(s, np.full(s.size, upper[1]))
        return float((upper[0] - lower[0]) / 2 * (marginal @ self._weights))

    def bracket(self, axis: int) -> tuple[float, float]:
        return float(self.density.lower[axis]), float(self.density.upper[axis])


def rosenblatt_provider(density: JointDensity) -> ConditionalCdfProvider:
    if isinstance(density, TensorDensity):
        return IndependentProvider(density.marginals)
    if isinstance(density, GaussianCopulaDensity):
        return GaussianCopulaProvider(density)
    if density.dimension == 2 and density.bounded:
        return QuadratureProvider(density)
    msg = f"no conditional CDF provider for {density.name} in dimension {density.dimension}"
    raise UnsupportedError(msg)


@dataclass(frozen=True, eq=False)
class RosenblattTransform:
    provider: ConditionalCdfProvider
    max_iterations: int = BISECTION_ITERATIONS
    residual_tolerance: float = BISECTION_RESIDUAL
    width_tolerance: float = BISECTION_WIDTH

    @classmethod
    def for_density(cls, density: JointDensity) -> RosenblattTransform:
        return cls(rosenblatt_provider(density))

    @property
    def dimension(self) -> int:
        return self.provider.dimension

    def forward(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        return np.column_stack(
            [self.provider.conditional_cdf(axis, array[:, :axis], array[:, axis]) for axis in range(self.dimension)]
        )

    def inverse(self, points: ArrayLike) -> NDArray[np.float64]:
        """Sequential vectorised bisection on each conditional CDF."""
        array = as_points(points, self.dimension)
        if np.any((array <= 0) | (array >= 1)):
            msg = "Rosenblatt inverse needs u strictly inside (0, 1)"
            raise InvalidArgumentError(msg)
        result = np.empty_like(array)
        for axis in range(self.dimension):
            result[:, axis] = self._solve_axis(axis, result[:, :axis], array[:, axis])
        return result

    def _solve_axis(self, axis: int, prefix: NDArray[np.float64], targets: NDArray[np.float64]) -> NDArray[np.float64]:
        lower, upper = self.provider.bracket(axis)
        lo = np.full(targets.size, lower)
        hi = np.full(targets.size, upper)
        mid = (lo + hi) / 2
        residual = np.full(targets.size, np.inf)
        for _ in range(self.max_iterations):
            mid = (lo + hi) / 2
            residual = self.provider.conditional_cdf(axis, prefix, mid) - targets
            if np.all((np.abs(residual) < self.residual_tolerance) | (hi - lo < self.width_tolerance)):
                return mid
            below = residual < 0
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        unresolved = (np.abs(residual) >= self.residual_tolerance) & (hi - lo >= self.width_tolerance)
        if np.any(unresolved):
            msg = f"Rosenblatt bisection on coordinate {axis} did not converge"
            raise ConvergenceError(msg, float(np.max(np.abs(residual[unresolved]))))
        return mid


def rosenblatt_forward(transform: RosenblattTransform, points: ArrayLike) -> NDArray[np.float64]:
    return transform.forward(points)


def rosenblatt_inverse(transform: RosenblattTransform, points: ArrayLike) -> NDArray[np.float64]:
    return transform.inverse(points)
