"""Black-box test functions: Genz oscillatory, surface-adsorption kinetics, 1-D diffusion, ridge wrapper.

Every model maps an ``(M, d)`` matrix of inputs to ``M`` scalar outputs.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import LinAlgError, qr, solve_banded

from pcedep.basis import as_points
from pcedep.exceptions import IntegrationBlowupError, InvalidArgumentError, NumericalError
from pcedep.measure import BANANA_LOWER, BANANA_UPPER, Seed

logger = logging.getLogger(__name__)

Model = Callable[[NDArray[np.float64]], NDArray[np.float64]]
Forcing = Callable[[NDArray[np.float64]], NDArray[np.float64]]

GENZ_SCALE = 40.0


@dataclass(frozen=True)
class GenzSpec:
    dimension: int
    coefficients: tuple[float, ...]
    shift: float
    draws: tuple[float, ...]
    seed: int | None = None

    @classmethod
    def from_draws(cls, draws: ArrayLike, shift: float, seed: int | None = None) -> GenzSpec:
        """``c_i = 40 b_i / (d Σ b_j)``."""
        b = np.asarray(draws, dtype=float).ravel()
        if b.size == 0 or np.any(b < 0) or not b.sum() > 0:
            msg = "Genz draws must be non-negative with a positive sum"
            raise InvalidArgumentError(msg)
        c = GENZ_SCALE * b / (b.size * b.sum())
        return cls(int(b.size), tuple(float(v) for v in c), float(shift), tuple(float(v) for v in b), seed)


def make_genz_spec(dimension: int, seed: int | None = None) -> GenzSpec:
    if dimension < 1:
        msg = f"dimension must be >= 1, got {dimension}"
        raise InvalidArgumentError(msg)
    rng = np.random.default_rng(seed)
    while True:
        shift = float(rng.random())
        draws = rng.random(dimension)
        if draws.sum() > 0:
            return GenzSpec.from_draws(draws, shift, seed)


def genz_oscillatory(spec: GenzSpec, points: ArrayLike) -> NDArray[np.float64]:
    """``cos(2π e + Σ c_i z_i)``."""
    array = as_points(points, spec.dimension)
    return np.cos(2 * math.pi * spec.shift + array @ np.asarray(spec.coefficients))


@dataclass(frozen=True)
class ChemistrySpec:
    """Three species adsorbing onto a surface; ``s = 1 - u1 - u2 - u3`` is the vacant fraction."""

    c: float = 1.0
    d: float = 1.0
    e: float = 0.1
    f: float = 0.1
    initial: tuple[float, float, float] = (1.0, 0.0, 0.0)
    horizon: float = 50.0
    step: float = 1e-3

    @property
    def steps(self) -> int:
        return round(self.horizon / self.step)


def chemistry_rates(points: ArrayLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Adsorption rates ``a = 2(z1+3)/3`` and ``b = 30(z2+2)/7 + 5``."""
    array = as_points(points, 2)
    return 2 * (array[:, 0] + 3) / 3, 30 * (array[:, 1] + 2) / 7 + 5


def _chemistry_rhs(
    state: NDArray[np.float64],
    a: NDArray[np.float64],
    b: NDArray[np.float64],
    spec: ChemistrySpec,
) -> NDArray[np.float64]:
    u1, u2, u3 = state
    vacant = 1 - u1 - u2 - u3
    coupling = 4 * spec.d * u1 * u2
    return np.stack(
        [
            a * vacant - spec.c * u1 - coupling,
            2 * b * vacant**2 - coupling,
            spec.e * vacant - spec.f * u3,
        ]
    )


def chemistry_solution(a: ArrayLike, b: ArrayLike, spec: ChemistrySpec | None = None) -> NDArray[np.float64]:
    """State ``(3, M)`` at the horizon by fixed-step RK4, vectorised over rate pairs."""
    spec = spec or ChemistrySpec()
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    state = np.repeat(np.asarray(spec.initial, dtype=float)[:, None], a.size, axis=1)
    dt = spec.horizon / spec.steps
    for step in range(spec.steps):
        k1 = _chemistry_rhs(state, a, b, spec)
        k2 = _chemistry_rhs(state + dt / 2 * k1, a, b, spec)
        k3 = _chemistry_rhs(state + dt / 2 * k2, a, b, spec)
        k4 = _chemistry_rhs(state + dt * k3, a, b, spec)
        state = state + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(state)):
            raise IntegrationBlowupError((step + 1) * dt)
    return state


def chemistry_qoi(points: ArrayLike, spec: ChemistrySpec | None = None) -> NDArray[np.float64]:
    """Mass fraction of the first species at the horizon."""
    a, b = chemistry_rates(points)
    return chemistry_solution(a, b, spec)[0]


def cosine_forcing(x: NDArray[np.float64]) -> NDArray[np.float64]:
    return np.cos(2 * math.pi * x)


@dataclass(frozen=True)
class DiffusionSpec:
    dimension: int
    correlation_length: float = 0.5
    grid_size: int = 201
    location: float = 0.5
    forcing: Forcing = field(default=cosine_forcing, compare=False)

    def __post_init__(self) -> None:
        if self.dimension < 1:
            msg = f"dimension must be >= 1, got {self.dimension}"
            raise InvalidArgumentError(msg)
        if self.correlation_length <= 0:
            msg = f"correlation length must be positive, got {self.correlation_length}"
            raise InvalidArgumentError(msg)
        if self.grid_size < 3:
            msg = f"grid needs at least 3 nodes, got {self.grid_size}"
            raise InvalidArgumentError(msg)

    @property
    def padded_length(self) -> float:
        return max(1.0, 2 * self.correlation_length)

    @property
    def scaled_length(self) -> float:
        return self.correlation_length / self.padded_length

    @property
    def grid(self) -> NDArray[np.float64]:
        return np.linspace(0.0, 1.0, self.grid_size)


def _expansion_terms(spec: DiffusionSpec, x: NDArray[np.float64]) -> NDArray[np.float64]:
    """Column k holds the coefficient of ``z_{k+1}`` in ``log(k - 0.5)`` at ``x``."""
    length = spec.scaled_length
    terms = np.empty((x.size, spec.dimension))
    terms[:, 0] = math.sqrt(math.sqrt(math.pi * length) / 2)
    for k in range(2, spec.dimension + 1):
        frequency = k // 2
        scale = math.sqrt(math.sqrt(math.pi * length)) * math.exp(-((frequency * math.pi * length) ** 2) / 8)
        phase = frequency * math.pi * x / spec.padded_length
        terms[:, k - 1] = scale * (np.sin(phase) if k % 2 == 0 else np.cos(phase))
    return terms


def diffusivity(spec: DiffusionSpec, points: ArrayLike, x: ArrayLike) -> NDArray[np.float64]:
    """``k(x, z) = 0.5 + exp(1 + Σ λ_k ξ_k(x) z_k)``, shape ``(M, len(x))``."""
    array = as_points(points, spec.dimension)
    nodes = np.asarray(x, dtype=float).ravel()
    return 0.5 + np.exp(1 + array @ _expansion_terms(spec, nodes).T)


def solve_diffusion(
    conductance: ArrayLike,
    forcing: ArrayLike,
) -> NDArray[np.float64]:
    """Central differences for ``(k u')' = f`` on a uniform grid of [0, 1] with ``u(0) = u(1) = 0``.

    ``conductance`` holds ``k`` at the ``n - 1`` cell midpoints and ``forcing``
    the right-hand side at the ``n`` nodes.
    """
    k = np.asarray(conductance, dtype=float).ravel()
    rhs = np.asarray(forcing, dtype=float).ravel()
    nodes = k.size + 1
    if rhs.size != nodes:
        msg = f"{k.size} midpoint values need {nodes} forcing values, got {rhs.size}"
        raise InvalidArgumentError(msg)
    h = 1.0 / (nodes - 1)
    interior = nodes - 2
    bands = np.zeros((3, interior))
    bands[0, 1:] = k[1:-1]
    bands[1, :] = -(k[:-1] + k[1:])
    bands[2, :-1] = k[1:-1]
    try:
        inner = solve_banded((1, 1), bands, h * h * rhs[1:-1])
    except LinAlgError as exc:
        msg = f"singular diffusion system: {exc}"
        raise NumericalError(msg) from exc
    return np.concatenate([[0.0], inner, [0.0]])


def diffusion_qoi(spec: DiffusionSpec, points: ArrayLike) -> NDArray[np.float64]:
    """``u(x*, z)`` for every row of ``points``, linearly interpolated from the grid."""
    array = as_points(points, spec.dimension)
    grid = spec.grid
    midpoints = (grid[:-1] + grid[1:]) / 2
    conductance = diffusivity(spec, array, midpoints)
    forcing = spec.forcing(grid)
    values = np.empty(array.shape[0])
    for row in range(array.shape[0]):
        values[row] = np.interp(spec.location, grid, solve_diffusion(conductance[row], forcing))
    return values


def random_projection(reduced: int, ambient: int, seed: Seed = None) -> NDArray[np.float64]:
    """``(reduced, ambient)`` matrix with orthonormal rows from the QR factor of a Gaussian matrix."""
    if not 1 <= reduced <= ambient:
        msg = f"need 1 <= reduced <= ambient, got {reduced} and {ambient}"
        raise InvalidArgumentError(msg)
    rng = np.random.default_rng(seed)
    q, _r = qr(rng.standard_normal((ambient, reduced)), mode="economic")
    return q.T


def zonotope_box(
    projection: ArrayLike,
    lower: float = 0.0,
    upper: float = 1.0,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Bounding box of ``A [lower, upper]^d``."""
    matrix = np.atleast_2d(np.asarray(projection, dtype=float))
    positive = np.clip(matrix, 0, None)
    negative = np.clip(matrix, None, 0)
    box_lower = lower * positive.sum(axis=1) + upper * negative.sum(axis=1)
    box_upper = upper * positive.sum(axis=1) + lower * negative.sum(axis=1)
    return box_lower, box_upper


class RidgeModel:
    """``f(y) = g(T(A y))`` with ``T`` the affine map of the zonotope box onto ``g``'s domain.

    Reduced inputs outside the zonotope box are clamped onto it and counted.
    """

    def __init__(
        self,
        projection: ArrayLike,
        inner: Model,
        inner_lower: ArrayLike,
        inner_upper: ArrayLike,
        *,
        ambient_lower: float = 0.0,
        ambient_upper: float = 1.0,
    ) -> None:
        self.projection = np.atleast_2d(np.asarray(projection, dtype=float))
        gram = self.projection @ self.projection.T
        if not np.allclose(gram, np.eye(gram.shape[0]), atol=1e-12):
            msg = "projection rows must be orthonormal"
            raise InvalidArgumentError(msg)
        self.inner = inner
        self.inner_lower = np.asarray(inner_lower, dtype=float)
        self.inner_upper = np.asarray(inner_upper, dtype=float)
        self.ambient_lower = ambient_lower
        self.ambient_upper = ambient_upper
        self.box_lower, self.box_upper = zonotope_box(self.projection, ambient_lower, ambient_upper)
        self.clamped = 0

    @property
    def reduced_dimension(self) -> int:
        return int(self.projection.shape[0])

    @property
    def ambient_dimension(self) -> int:
        return int(self.projection.shape[1])

    def reduced(self, points: ArrayLike) -> NDArray[np.float64]:
        """Evaluate on points ``z = A y`` of the reduced space."""
        array = as_points(points, self.reduced_dimension)
        outside = np.any((array < self.box_lower) | (array > self.box_upper), axis=1)
        if np.any(outside):
            count = int(outside.sum())
            self.clamped += count
            logger.warning("Clamped %d reduced inputs onto the zonotope box (%d so far)", count, self.clamped)
            array = np.clip(array, self.box_lower, self.box_upper)
        unit = (array - self.box_lower) / (self.box_upper - self.box_lower)
        return self.inner(self.inner_lower + unit * (self.inner_upper - self.inner_lower))

    def __call__(self, points: ArrayLike) -> NDArray[np.float64]:
        array = as_points(points, self.ambient_dimension)
        return self.reduced(array @ self.projection.T)


def ridge_qoi(model: RidgeModel, points: ArrayLike) -> NDArray[np.float64]:
    return model(points)


def chemistry_ridge(ambient: int = 20, seed: Seed = None, spec: ChemistrySpec | None = None) -> RidgeModel:
    """Ridge of the first-species fraction over a random 2-D projection of the unit cube."""
    chemistry = spec or ChemistrySpec()
    return RidgeModel(
        random_projection(2, ambient, seed),
        lambda z: chemistry_qoi(z, chemistry),
        BANANA_LOWER,
        BANANA_UPPER,
    )


ModelFactory = Callable[[dict[str, Any]], Model]

_MODELS: dict[str, ModelFactory] = {}


def register_model(name: str) -> Callable[[ModelFactory], ModelFactory]:
    def decorator(factory: ModelFactory) -> ModelFactory:
        _MODELS[name] = factory
        return factory

    return decorator


def create_model(name: str, options: dict[str, Any] | None = None) -> Model:
    if name not in _MODELS:
        available = ", ".join(sorted(_MODELS))
        msg = f"Unknown model {name!r}. Available: {available}"
        raise KeyError(msg)
    return _MODELS[name](options or {})


def available_models() -> list[str]:
    return sorted(_MODELS)


@register_model("genz")
def _genz_model(options: dict[str, Any]) -> Model:
    spec = make_genz_spec(int(options.get("dimension", 2)), options.get("seed"))
    return lambda points: genz_oscillatory(spec, points)


@register_model("chemistry")
def _chemistry_model(options: dict[str, Any]) -> Model:
    spec = ChemistrySpec(step=float(options.get("step", 1e-3)))
    return lambda points: chemistry_qoi(points, spec)


@register_model("diffusion")
def _diffusion_model(options: dict[str, Any]) -> Model:
    spec = DiffusionSpec(
        dimension=int(options.get("dimension", 11)),
        correlation_length=float(options.get("correlation_length", 0.5)),
        grid_size=int(options.get("grid_size", 201)),
    )
    return lambda points: diffusion_qoi(spec, points)


@register_model("ridge")
def _ridge_model(options: dict[str, Any]) -> Model:
    return chemistry_ridge(int(options.get("ambient", 20)), options.get("seed"))
