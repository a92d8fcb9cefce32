"""Multi-index sets spanning polynomial approximation spaces.

Sets are stored as read-only ``(N, d)`` integer arrays ordered by ascending
total degree with lexicographic tie-break, so the first entry of every
builder output is the zero index.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import NDArray

from pcedep.config import dumps_json, loads_json
from pcedep.exceptions import InvalidArgumentError

# Relative slack for the q-norm comparisons; (sqrt(2))**2 is not exactly 2.
NORM_TOLERANCE = 1e-10

Admissible = Callable[[tuple[int, ...]], bool]


class Norm(Enum):
    MAX = "max"


MAX_NORM = Norm.MAX


@dataclass(frozen=True, eq=False)
class MultiIndexSet:
    dimension: int
    indices: NDArray[np.int64]

    @classmethod
    def from_indices(cls, indices: Iterable[Sequence[int]], dimension: int | None = None) -> MultiIndexSet:
        """Deduplicate and sort indices into degree-then-lex order."""
        unique = {tuple(int(entry) for entry in index) for index in indices}
        if dimension is None:
            if not unique:
                msg = "dimension is required for an empty index set"
                raise InvalidArgumentError(msg)
            dimension = len(next(iter(unique)))
        if dimension < 1:
            msg = f"dimension must be >= 1, got {dimension}"
            raise InvalidArgumentError(msg)
        for index in unique:
            if len(index) != dimension:
                msg = f"index {index} does not have dimension {dimension}"
                raise InvalidArgumentError(msg)
            if min(index) < 0:
                msg = f"index {index} has negative entries"
                raise InvalidArgumentError(msg)
        ordered = sorted(unique, key=lambda index: (sum(index), index))
        array = np.array(ordered, dtype=np.int64).reshape(len(ordered), dimension)
        array.setflags(write=False)
        return cls(dimension=dimension, indices=array)

    def __len__(self) -> int:
        return int(self.indices.shape[0])

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return (tuple(int(entry) for entry in row) for row in self.indices)

    def __contains__(self, index: object) -> bool:
        candidate = np.asarray(index)
        if candidate.shape != (self.dimension,):
            return False
        return bool(np.any(np.all(self.indices == candidate, axis=1)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiIndexSet):
            return NotImplemented
        return self.dimension == other.dimension and np.array_equal(self.indices, other.indices)

    def __hash__(self) -> int:
        return hash((self.dimension, self.indices.tobytes()))

    def position(self, index: Sequence[int]) -> int:
        matches = np.flatnonzero(np.all(self.indices == np.asarray(index), axis=1))
        if matches.size == 0:
            msg = f"{tuple(index)} is not in the index set"
            raise InvalidArgumentError(msg)
        return int(matches[0])

    def max_degrees(self) -> NDArray[np.int64]:
        return self.indices.max(axis=0)

    def total_degree(self) -> int:
        return int(self.indices.sum(axis=1).max())

    def is_downward_closed(self) -> bool:
        members = set(self)
        for index in members:
            for axis, entry in enumerate(index):
                if entry > 0 and (index[:axis] + (entry - 1,) + index[axis + 1 :]) not in members:
                    return False
        return True

    def truncate_total_degree(self, max_degree: int) -> MultiIndexSet:
        """Intersect with the total-degree set of ``max_degree``; stays downward closed."""
        keep = self.indices.sum(axis=1) <= max_degree
        return MultiIndexSet.from_indices(self.indices[keep].tolist(), self.dimension)

    def to_json(self) -> bytes:
        return dumps_json(self.indices.tolist())

    @classmethod
    def from_json(cls, data: bytes | str) -> MultiIndexSet:
        rows = loads_json(data)
        if not isinstance(rows, list) or not rows:
            msg = "index set JSON must be a non-empty array of integer arrays"
            raise InvalidArgumentError(msg)
        return cls.from_indices(rows)


def _enumerate(dimension: int, admissible: Admissible) -> list[tuple[int, ...]]:
    """Enumerate a downward-closed set from a monotone membership test.

    Each coordinate is increased until the zero-padded prefix leaves the set;
    monotonicity makes the padded test sufficient for pruning.
    """
    found: list[tuple[int, ...]] = []

    def extend(prefix: tuple[int, ...]) -> None:
        if len(prefix) == dimension:
            found.append(prefix)
            return
        padding = (0,) * (dimension - len(prefix) - 1)
        value = 0
        while admissible(prefix + (value,) + padding):
            extend(prefix + (value,))
            value += 1

    if admissible((0,) * dimension):
        extend(())
    return found


def _check_dimension_degree(dimension: int, degree: int) -> None:
    if dimension < 1:
        msg = f"dimension must be >= 1, got {dimension}"
        raise InvalidArgumentError(msg)
    if degree < 0:
        msg = f"degree must be >= 0, got {degree}"
        raise InvalidArgumentError(msg)


def total_degree_set(dimension: int, degree: int) -> MultiIndexSet:
    _check_dimension_degree(dimension, degree)
    indices = _enumerate(dimension, lambda index: sum(index) <= degree)
    return MultiIndexSet.from_indices(indices, dimension)


def hyperbolic_set(dimension: int, degree: int, q: float | Norm) -> MultiIndexSet:
    """Indices with ``||λ||_q <= degree``; pass ``MAX_NORM`` for the full tensor grid."""
    _check_dimension_degree(dimension, degree)
    if q is MAX_NORM:
        indices = _enumerate(dimension, lambda index: max(index) <= degree)
        return MultiIndexSet.from_indices(indices, dimension)
    if isinstance(q, Norm) or not q > 0 or math.isinf(q):
        msg = f"q must be a positive finite real or MAX_NORM, got {q!r}"
        raise InvalidArgumentError(msg)
    if q == 1:
        return total_degree_set(dimension, degree)
    bound = float(degree) ** q * (1 + NORM_TOLERANCE)

    def admissible(index: tuple[int, ...]) -> bool:
        return sum(float(entry) ** q for entry in index) <= bound

    return MultiIndexSet.from_indices(_enumerate(dimension, admissible), dimension)


def anisotropic_set(
    alpha: Sequence[float] | NDArray[np.float64],
    level: int,
    *,
    max_total_degree: int | None = None,
) -> MultiIndexSet:
    """Union of boxes ``λ <= γ`` over ``Σ (γ_k - 1) α_k <= level · min(α)``.

    ``max_total_degree`` intersects the result with a total-degree set during
    enumeration, which keeps high-dimensional sets tractable.
    """
    weights = np.asarray(alpha, dtype=float)
    if weights.ndim != 1 or weights.size == 0:
        msg = "alpha must be a non-empty vector"
        raise InvalidArgumentError(msg)
    if np.any(weights <= 0):
        msg = "alpha entries must be positive"
        raise InvalidArgumentError(msg)
    if level < 0:
        msg = f"level must be >= 0, got {level}"
        raise InvalidArgumentError(msg)
    budget = level * float(weights.min()) * (1 + NORM_TOLERANCE)
    cap = math.inf if max_total_degree is None else max_total_degree

    def admissible(index: tuple[int, ...]) -> bool:
        if sum(index) > cap:
            return False
        cost = sum(max(entry - 1, 0) * weight for entry, weight in zip(index, weights, strict=False))
        return cost <= budget

    return MultiIndexSet.from_indices(_enumerate(int(weights.size), admissible), int(weights.size))


def frequency(k: int) -> int:
    """Frequency index of the k-th (1-based) expansion term."""
    return k // 2


def diffusion_alpha(dimension: int, correlation_length: float) -> NDArray[np.float64]:
    """Anisotropy weights of the diffusivity expansion for scaled length ``L``."""
    if dimension < 1:
        msg = f"dimension must be >= 1, got {dimension}"
        raise InvalidArgumentError(msg)
    if correlation_length <= 0:
        msg = f"L must be positive, got {correlation_length}"
        raise InvalidArgumentError(msg)
    length = correlation_length
    alpha = np.empty(dimension)
    alpha[0] = 0.5 * math.log(1 + math.sqrt(1 / (24 * math.sqrt(math.pi) * length)))
    base = 0.5 * math.log(1 + math.sqrt(1 / (48 * math.sqrt(math.pi) * length)))
    for k in range(2, dimension + 1):
        alpha[k - 1] = base * math.exp((frequency(k) * math.pi * length) ** 2 / 8)
    return alpha
