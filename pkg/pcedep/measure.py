"""Joint probability densities on boxes and the samplers that draw from them.

Every density exposes ``density(points)`` over ``(M, d)`` matrices, its
support box ``lower``/``upper`` and, where possible, ``sample(count, seed)``.
Seeds are anything ``numpy.random.default_rng`` accepts, so callers can pass
spawned ``SeedSequence`` children for independent streams.
"""

from __future__ import annotations

import csv
import functools
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import stats
from scipy.linalg import LinAlgError, cholesky
from scipy.special import logsumexp, ndtr, ndtri

from pcedep.basis import as_points, box_gauss_rule
from pcedep.exceptions import (
    InvalidArgumentError,
    NotPositiveDefiniteError,
    SamplingEfficiencyError,
    UnsupportedError,
)

logger = logging.getLogger(__name__)

Seed = int | np.random.SeedSequence | np.random.Generator | None
DensityFunction = Callable[[NDArray[np.float64]], NDArray[np.float64]]

CORRELATION_TOLERANCE = 1e-12
MIN_ACCEPTANCE_RATE = 1e-4
LOW_ACCEPTANCE_RATE = 1e-2
BANANA_LOWER = (-3.0, -2.0)
BANANA_UPPER = (3.0, 6.0)
KDE_SUPPORT_BANDWIDTHS = 3.0


@dataclass(frozen=True, eq=False)
class Marginal:
    """One-dimensional distribution backed by a frozen ``scipy.stats`` object."""

    name: str
    params: tuple[float, ...]
    distribution: Any

    @classmethod
    def beta(cls, alpha: float, beta: float, lower: float = 0.0, upper: float = 1.0) -> Marginal:
        if alpha <= 0 or beta <= 0 or not lower < upper:
            msg = f"invalid Beta marginal ({alpha}, {beta}) on [{lower}, {upper}]"
            raise InvalidArgumentError(msg)
        return cls("beta", (alpha, beta, lower, upper), stats.beta(alpha, beta, loc=lower, scale=upper - lower))

    @classmethod
    def uniform(cls, lower: float = 0.0, upper: float = 1.0) -> Marginal:
        if not lower < upper:
            msg = f"empty interval [{lower}, {upper}]"
            raise InvalidArgumentError(msg)
        return cls("uniform", (lower, upper), stats.uniform(loc=lower, scale=upper - lower))

    @classmethod
    def normal(cls, mean: float = 0.0, std: float = 1.0) -> Marginal:
        if std <= 0:
            msg = f"std must be positive, got {std}"
            raise InvalidArgumentError(msg)
        return cls("normal", (mean, std), stats.norm(loc=mean, scale=std))

    @property
    def support(self) -> tuple[float, float]:
        lower, upper = self.distribution.support()
        return float(lower), float(upper)

    @property
    def mean(self) -> float:
        return float(self.distribution.mean())

    @property
    def std(self) -> float:
        return float(self.distribution.std())

    def pdf(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.distribution.pdf(x)

    def cdf(self, x: ArrayLike) -> NDArray[np.float64]:
        return self.distribution.cdf(x)

    def ppf(self, q: ArrayLike) -> NDArray[np.float64]:
        return self.distribution.ppf(q)

    def to_gaussian(self, x: ArrayLike) -> NDArray[np.float64]:
        """``Φ^{-1}(F(x))``, using the survival function in the upper tail."""
        values = np.asarray(x, dtype=float)
        lower = self.distribution.cdf(values)
        upper = self.distribution.sf(values)
        return np.where(lower <= 0.5, ndtri(lower), -ndtri(upper))

    def from_gaussian(self, u: ArrayLike) -> NDArray[np.float64]:
        """``F^{-1}(Φ(u))``, using the inverse survival function for ``u > 0``."""
        values = np.asarray(u, dtype=float)
        return np.where(values <= 0, self.distribution.ppf(ndtr(values)), self.distribution.isf(ndtr(-values)))

    def describe(self) -> dict[str, Any]:
        return {"name": self.name, "params": list(self.params)}

    @classmethod
    def from_description(cls, description: dict[str, Any]) -> Marginal:
        """Inverse of :meth:`describe`, e.g. ``{"name": "beta", "params": [2, 5]}``."""
        factories = {"beta": cls.beta, "uniform": cls.uniform, "normal": cls.normal}
        name = description.get("name")
        if name not in factories:
            msg = f"Unknown marginal {name!r}. Available: {', '.join(sorted(factories))}"
            raise InvalidArgumentError(msg)
        return factories[name](*(float(value) for value in description.get("params", [])))


class JointDensity:
    """Base class with explicit unsupported-operation errors."""

    name = "density"
    normalized = True

    def __init__(self, lower: ArrayLike, upper: ArrayLike) -> None:
        self.lower = np.asarray(lower, dtype=float).ravel()
        self.upper = np.asarray(upper, dtype=float).ravel()
        if self.lower.shape != self.upper.shape or np.any(self.lower >= self.upper):
            msg = f"invalid support box {self.lower} .. {self.upper}"
            raise InvalidArgumentError(msg)

    @property
    def dimension(self) -> int:
        return int(self.lower.size)

    @property
    def bounded(self) -> bool:
        return bool(np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper)))

    def in_support(self, points: NDArray[np.float64]) -> NDArray[np.bool_]:
        return np.all((points >= self.lower) & (points <= self.upper), axis=1)

    def density(self, points: ArrayLike) -> NDArray[np.float64]:
        msg = f"{self.name} does not implement density()"
        raise UnsupportedError(msg)

    def sample(self, count: int, seed: Seed = None) -> NDArray[np.float64]:
        msg = f"{self.name} does not implement sample()"
        raise UnsupportedError(msg)

    def describe(self) -> dict[str, Any]:
        return {"name": self.name, "lower": self.lower.tolist(), "upper": self.upper.tolist()}


class TensorDensity(JointDensity):
    """Product of independent marginals."""

    name = "tensor"

    def __init__(self, marginals: Sequence[Marginal]) -> None:
        self.marginals = tuple(marginals)
        if not self.marginals:
            msg = "at least one marginal is required"
            raise InvalidArgumentError(msg)
        supports = [marginal.support for marginal in self.marginals]
        super().__init__([lo for lo, _ in supports], [hi for _, hi in supports])

    def density(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        values = np.ones(array.shape[0])
        for axis, marginal in enumerate(self.marginals):
            values *= marginal.pdf(array[:, axis])
        return values

    def sample(self, count: int, seed: Seed = None) -> NDArray[np.float64]:
        rng = np.random.default_rng(seed)
        return np.column_stack([marginal.distribution.rvs(size=count, random_state=rng) for marginal in self.marginals])

    def describe(self) -> dict[str, Any]:
        return {"name": self.name, "marginals": [marginal.describe() for marginal in self.marginals]}


def tensor_beta_density(
    alpha: float,
    beta: float,
    dimension: int,
    lower: float = 0.0,
    upper: float = 1.0,
) -> TensorDensity:
    return TensorDensity([Marginal.beta(alpha, beta, lower, upper)] * dimension)


def cholesky_factor(correlation: ArrayLike) -> NDArray[np.float64]:
    """Validate a correlation matrix and return its lower Cholesky factor."""
    matrix = np.atleast_2d(np.asarray(correlation, dtype=float))
    if matrix.shape[0] != matrix.shape[1]:
        msg = f"correlation matrix must be square, got {matrix.shape}"
        raise InvalidArgumentError(msg)
    if not np.allclose(matrix, matrix.T, rtol=0, atol=CORRELATION_TOLERANCE):
        msg = "correlation matrix must be symmetric"
        raise InvalidArgumentError(msg)
    if not np.allclose(np.diag(matrix), 1.0, rtol=0, atol=CORRELATION_TOLERANCE):
        msg = "correlation matrix must have a unit diagonal"
        raise InvalidArgumentError(msg)
    if np.any(np.abs(matrix) > 1 + CORRELATION_TOLERANCE):
        msg = "correlation entries must lie in [-1, 1]"
        raise InvalidArgumentError(msg)
    try:
        return cholesky(matrix, lower=True)
    except LinAlgError as exc:
        msg = f"correlation matrix is not positive definite: {exc}"
        raise NotPositiveDefiniteError(msg) from exc


def equicorrelation(dimension: int, rho: float) -> NDArray[np.float64]:
    matrix = np.full((dimension, dimension), float(rho))
    np.fill_diagonal(matrix, 1.0)
    return matrix


def sign_flipped(correlation: ArrayLike, axes: Sequence[int]) -> NDArray[np.float64]:
    """``D R D`` with ``D`` negating the listed axes; stays positive definite."""
    matrix = np.asarray(correlation, dtype=float)
    signs = np.ones(matrix.shape[0])
    signs[list(axes)] = -1.0
    return signs[:, None] * matrix * signs[None, :]


class GaussianCopulaDensity(JointDensity):
    """Marginals coupled by a Gaussian copula with correlation ``R_V``."""

    name = "gaussian-copula"

    def __init__(self, marginals: Sequence[Marginal], correlation: ArrayLike) -> None:
        self.marginals = tuple(marginals)
        self.correlation = np.atleast_2d(np.asarray(correlation, dtype=float))
        if self.correlation.shape != (len(self.marginals), len(self.marginals)):
            msg = f"correlation shape {self.correlation.shape} does not match {len(self.marginals)} marginals"
            raise InvalidArgumentError(msg)
        self.cholesky = cholesky_factor(self.correlation)
        supports = [marginal.support for marginal in self.marginals]
        super().__init__([lo for lo, _ in supports], [hi for _, hi in supports])
        self._gaussian = stats.multivariate_normal(mean=np.zeros(self.dimension), cov=self.correlation)

    def to_gaussian(self, points: NDArray[np.float64]) -> NDArray[np.float64]:
        return np.column_stack([marginal.to_gaussian(points[:, axis]) for axis, marginal in enumerate(self.marginals)])

    def density(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        marginal_pdf = np.ones(array.shape[0])
        for axis, marginal in enumerate(self.marginals):
            marginal_pdf *= marginal.pdf(array[:, axis])
        gaussian = self.to_gaussian(array)
        interior = np.all(np.isfinite(gaussian), axis=1) & (marginal_pdf > 0)
        values = np.zeros(array.shape[0])
        if np.any(interior):
            inner = gaussian[interior]
            log_copula = np.atleast_1d(self._gaussian.logpdf(inner)) - stats.norm.logpdf(inner).sum(axis=1)
            values[interior] = np.exp(log_copula) * marginal_pdf[interior]
        return values

    def sample(self, count: int, seed: Seed = None) -> NDArray[np.float64]:
        return copula_sample(self, count, seed)

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "marginals": [marginal.describe() for marginal in self.marginals],
            "correlation": self.correlation.tolist(),
        }


def gaussian_copula_density(marginals: Sequence[Marginal], correlation: ArrayLike) -> GaussianCopulaDensity:
    return GaussianCopulaDensity(marginals, correlation)


def copula_sample(density: GaussianCopulaDensity, count: int, seed: Seed = None) -> NDArray[np.float64]:
    """Draw ``u ~ N(0, I)``, correlate with ``L``, and push through ``F_i^{-1} ∘ Φ``."""
    rng = np.random.default_rng(seed)
    independent = rng.standard_normal((count, density.dimension))
    correlated = independent @ density.cholesky.T
    return np.column_stack(
        [marginal.from_gaussian(correlated[:, axis]) for axis, marginal in enumerate(density.marginals)]
    )


class BetaMixtureDensity(JointDensity):
    """``Σ_c w_c Π_i B(z_i; α_c, β_c)`` on a box."""

    name = "beta-mixture"

    def __init__(
        self,
        components: Sequence[tuple[float, float, float]],
        dimension: int,
        lower: float = 0.0,
        upper: float = 1.0,
    ) -> None:
        if not components:
            msg = "at least one mixture component is required"
            raise InvalidArgumentError(msg)
        weights = np.array([weight for weight, _, _ in components], dtype=float)
        if np.any(weights <= 0):
            msg = "mixture weights must be positive"
            raise InvalidArgumentError(msg)
        if abs(weights.sum() - 1.0) > 1e-12:
            msg = f"mixture weights must sum to 1, got {weights.sum()!r}"
            raise InvalidArgumentError(msg)
        super().__init__([lower] * dimension, [upper] * dimension)
        self.weights = weights
        self.components = [tensor_beta_density(alpha, beta, dimension, lower, upper) for _, alpha, beta in components]
        self.parameters = [(float(alpha), float(beta)) for _, alpha, beta in components]

    def density(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        values = np.zeros(array.shape[0])
        for weight, component in zip(self.weights, self.components, strict=True):
            values += weight * component.density(array)
        return values

    def sample(self, count: int, seed: Seed = None) -> NDArray[np.float64]:
        rng = np.random.default_rng(seed)
        labels = rng.choice(len(self.components), size=count, p=self.weights)
        samples = np.empty((count, self.dimension))
        for label, component in enumerate(self.components):
            rows = np.flatnonzero(labels == label)
            if rows.size:
                samples[rows] = component.sample(rows.size, rng)
        return samples

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "weights": self.weights.tolist(),
            "components": [list(parameters) for parameters in self.parameters],
            "lower": self.lower.tolist(),
            "upper": self.upper.tolist(),
        }


def beta_mixture_density(
    components: Sequence[tuple[float, float, float]],
    dimension: int,
    lower: float = 0.0,
    upper: float = 1.0,
) -> BetaMixtureDensity:
    return BetaMixtureDensity(components, dimension, lower, upper)


def banana_unnormalized(points: NDArray[np.float64]) -> NDArray[np.float64]:
    z1 = points[:, 0]
    z2 = points[:, 1]
    return np.exp(-(0.1 * z1**4 + 0.5 * (2 * z2 - z1**2) ** 2))


@functools.cache
def banana_normalization(order: int = 200) -> float:
    """``C`` such that ``C · exp(...)`` integrates to one over the banana box."""
    rule = box_gauss_rule(BANANA_LOWER, BANANA_UPPER, order)
    volume = math.prod(hi - lo for lo, hi in zip(BANANA_LOWER, BANANA_UPPER, strict=True))
    return 1.0 / (volume * rule.integrate(banana_unnormalized(rule.nodes)))


class BananaDensity(JointDensity):
    name = "banana"

    def __init__(self) -> None:
        super().__init__(BANANA_LOWER, BANANA_UPPER)

    @property
    def normalization(self) -> float:
        return banana_normalization()

    def unnormalized(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, 2)
        return np.where(self.in_support(array), banana_unnormalized(array), 0.0)

    def density(self, points: ArrayLike) -> NDArray[np.float64]:
        return self.normalization * self.unnormalized(points)

    def sample(self, count: int, seed: Seed = None) -> NDArray[np.float64]:
        # The unnormalized density peaks at 1, so the box volume bounds the ratio to the uniform proposal.
        volume = float(np.prod(self.upper - self.lower))
        return rejection_sample(self.unnormalized, self.lower, self.upper, volume, count, seed).samples


def banana_density() -> BananaDensity:
    return BananaDensity()


def _bw_scott(std: NDArray[np.float64], count: int, dimension: int) -> NDArray[np.float64]:
    return std * count ** (-1.0 / (dimension + 4))


def _bw_silverman(std: NDArray[np.float64], count: int, dimension: int) -> NDArray[np.float64]:
    return std * (4.0 / (dimension + 2)) ** (1.0 / (dimension + 4)) * count ** (-1.0 / (dimension + 4))


BANDWIDTH_RULES: dict[str, Callable[[NDArray[np.float64], int, int], NDArray[np.float64]]] = {
    "scott": _bw_scott,
    "silverman": _bw_silverman,
}


class KdeDensity(JointDensity):
    """Gaussian product-kernel density estimate with a diagonal bandwidth."""

    name = "kde"
    chunk_elements = 2_000_000

    def __init__(self, samples: ArrayLike, bandwidth: str | float = "scott") -> None:
        data = np.asarray(samples, dtype=float)
        if data.ndim == 1:
            data = data.reshape(-1, 1)
        count, dimension = data.shape
        if count < 2:
            msg = "a KDE needs at least two samples"
            raise InvalidArgumentError(msg)
        std = data.std(axis=0, ddof=1)
        if np.any(std <= 0):
            msg = f"sample dimension(s) {np.flatnonzero(std <= 0).tolist()} have zero variance"
            raise InvalidArgumentError(msg)
        if isinstance(bandwidth, str):
            if bandwidth not in BANDWIDTH_RULES:
                available = ", ".join(sorted(BANDWIDTH_RULES))
                msg = f"Unknown bandwidth rule {bandwidth!r}. Available: {available}"
                raise InvalidArgumentError(msg)
            widths = BANDWIDTH_RULES[bandwidth](std, count, dimension)
        else:
            if bandwidth <= 0:
                msg = f"bandwidth factor must be positive, got {bandwidth}"
                raise InvalidArgumentError(msg)
            widths = std * float(bandwidth)
        self.samples = data
        self.bandwidth = widths
        self.bandwidth_rule = str(bandwidth)
        super().__init__(
            data.min(axis=0) - KDE_SUPPORT_BANDWIDTHS * widths,
            data.max(axis=0) + KDE_SUPPORT_BANDWIDTHS * widths,
        )

    def density(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.dimension)
        count = self.samples.shape[0]
        log_norm = -np.log(self.bandwidth).sum() - 0.5 * self.dimension * math.log(2 * math.pi) - math.log(count)
        chunk = max(1, self.chunk_elements // (count * self.dimension))
        values = np.empty(array.shape[0])
        for start in range(0, array.shape[0], chunk):
            block = array[start : start + chunk]
            scaled = (block[:, None, :] - self.samples[None, :, :]) / self.bandwidth
            values[start : start + chunk] = np.exp(logsumexp(-0.5 * np.sum(scaled**2, axis=2), axis=1) + log_norm)
        return np.where(self.in_support(array), values, 0.0)

    def sample(self, count: int, seed: Seed = None) -> NDArray[np.float64]:
        rng = np.random.default_rng(seed)
        out = np.empty((count, self.dimension))
        filled = 0
        while filled < count:
            need = count - filled
            rows = self.samples[rng.integers(0, self.samples.shape[0], size=need)]
            draws = rows + rng.standard_normal((need, self.dimension)) * self.bandwidth
            draws = draws[self.in_support(draws)]
            out[filled : filled + draws.shape[0]] = draws
            filled += draws.shape[0]
        return out

    def describe(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "bandwidth_rule": self.bandwidth_rule,
            "bandwidth": self.bandwidth.tolist(),
            "sample_count": int(self.samples.shape[0]),
        }


def zonotope_kde(projected_samples: ArrayLike, bandwidth: str | float = "scott") -> KdeDensity:
    return KdeDensity(projected_samples, bandwidth)


def _finite_box(lower: ArrayLike, upper: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    lo = np.asarray(lower, dtype=float).ravel()
    hi = np.asarray(upper, dtype=float).ravel()
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        msg = "Chebyshev candidates need a finite box; draw from the density instead"
        raise UnsupportedError(msg)
    return lo, hi


def chebyshev_candidates(lower: ArrayLike, upper: ArrayLike, count: int, seed: Seed = None) -> NDArray[np.float64]:
    """IID arcsine-distributed samples on a box."""
    lo, hi = _finite_box(lower, upper)
    rng = np.random.default_rng(seed)
    unit = (1 - np.cos(np.pi * rng.random((count, lo.size)))) / 2
    return lo + (hi - lo) * unit


def mixed_candidates(
    density: JointDensity,
    count: int,
    seed: Seed = None,
    *,
    lower: ArrayLike | None = None,
    upper: ArrayLike | None = None,
) -> NDArray[np.float64]:
    """``ceil(n/2)`` Chebyshev samples followed by ``floor(n/2)`` density samples.

    Unbounded boxes fall back to density samples only.
    """
    lo = density.lower if lower is None else np.asarray(lower, dtype=float)
    hi = density.upper if upper is None else np.asarray(upper, dtype=float)
    chebyshev_seed, density_seed = spawn_seeds(seed, 2)
    if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
        return density.sample(count, density_seed)
    chebyshev_count = (count + 1) // 2
    parts = [chebyshev_candidates(lo, hi, chebyshev_count, chebyshev_seed)]
    if count - chebyshev_count:
        parts.append(density.sample(count - chebyshev_count, density_seed))
    return np.vstack(parts)


def spawn_seeds(seed: Seed, count: int) -> list[np.random.SeedSequence]:
    """Independent child streams of ``seed``; equal seeds give equal children."""
    return np.random.SeedSequence(_entropy(seed)).spawn(count)


def _entropy(seed: Seed) -> int | None:
    if isinstance(seed, np.random.SeedSequence):
        return int(seed.generate_state(1)[0])
    if isinstance(seed, np.random.Generator):
        return int(seed.integers(0, 2**63 - 1))
    return seed


@dataclass(frozen=True)
class RejectionDraw:
    samples: NDArray[np.float64]
    acceptance_rate: float
    proposals: int


def _check_bound(density: DensityFunction, lo: NDArray[np.float64], hi: NDArray[np.float64], bound: float) -> None:
    per_axis = {1: 2001, 2: 201, 3: 51}[lo.size]
    axes = [np.linspace(a, b, per_axis) for a, b in zip(lo, hi, strict=True)]
    grid = np.column_stack([mesh.ravel() for mesh in np.meshgrid(*axes, indexing="ij")])
    peak = float(np.max(density(grid))) * float(np.prod(hi - lo))
    if peak > bound * (1 + 1e-9):
        msg = f"bound {bound:.6g} is below the grid supremum {peak:.6g} of density / proposal"
        raise InvalidArgumentError(msg)


def rejection_sample(
    density: DensityFunction,
    lower: ArrayLike,
    upper: ArrayLike,
    bound: float,
    count: int,
    seed: Seed = None,
    *,
    max_proposals: int = 50_000_000,
) -> RejectionDraw:
    """IID samples from ``density`` with a uniform proposal on ``[lower, upper]``.

    ``bound`` must dominate ``sup density / proposal density``; it is checked on
    a dense grid when ``d <= 3``. ``density`` may be unnormalized.
    """
    lo, hi = _finite_box(lower, upper)
    if bound <= 0:
        msg = f"bound must be positive, got {bound}"
        raise InvalidArgumentError(msg)
    if lo.size <= 3:
        _check_bound(density, lo, hi, bound)
    volume = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    accepted: list[NDArray[np.float64]] = []
    kept = 0
    proposals = 0
    while kept < count:
        batch = max(1024, 2 * (count - kept))
        proposed = lo + (hi - lo) * rng.random((batch, lo.size))
        ratio = density(proposed) * volume / bound
        keep = proposed[rng.random(batch) < ratio]
        accepted.append(keep)
        kept += keep.shape[0]
        proposals += batch
        rate = kept / proposals
        if proposals >= 100_000 and rate < MIN_ACCEPTANCE_RATE:
            raise SamplingEfficiencyError(rate)
        if proposals >= max_proposals:
            raise SamplingEfficiencyError(rate)
    rate = kept / proposals if proposals else 1.0
    if rate < LOW_ACCEPTANCE_RATE:
        logger.warning("Rejection sampling accepted only %.2e of %d proposals", rate, proposals)
    samples = np.vstack(accepted)[:count] if accepted else np.empty((0, lo.size))
    return RejectionDraw(samples=samples, acceptance_rate=rate, proposals=proposals)


def save_samples(path: Path, samples: ArrayLike) -> None:
    data = np.atleast_2d(np.asarray(samples, dtype=float))
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow([f"z_{axis + 1}" for axis in range(data.shape[1])])
        writer.writerows([[repr(float(value)) for value in row] for row in data])


def load_samples(path: Path) -> NDArray[np.float64]:
    with path.open(encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(value) for value in row] for row in reader if row]
    return np.array(rows, dtype=float).reshape(len(rows), len(header))
