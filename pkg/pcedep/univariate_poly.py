"""Univariate orthonormal polynomial families and Gauss quadrature.

Families are orthonormal with respect to a probability measure: Beta(α, β)
(statistics convention, density ∝ t^(α-1) (1-t)^(β-1)) on an interval,
uniform (Legendre) on an interval, or the standard normal (probabilists'
Hermite). Evaluation uses the orthonormal three-term recurrence

    sqrt(b_{k+1}) φ_{k+1} = (x - a_k) φ_k - sqrt(b_k) φ_{k-1},   φ_0 = 1.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.linalg import eigh_tridiagonal

from pcedep.exceptions import DomainError, InvalidArgumentError, UnsupportedError
from pcedep.schemas import PolyKind, RuleKind

SUPPORT_SLACK = 1e-12


@dataclass(frozen=True)
class PolyFamily:
    kind: PolyKind
    alpha: float = 1.0
    beta: float = 1.0
    lower: float = 0.0
    upper: float = 1.0

    @classmethod
    def jacobi(cls, alpha: float, beta: float, lower: float = 0.0, upper: float = 1.0) -> PolyFamily:
        """Family orthonormal for Beta(alpha, beta) mapped to [lower, upper]."""
        if alpha <= 0 or beta <= 0:
            msg = f"Beta parameters must be positive, got ({alpha}, {beta})"
            raise InvalidArgumentError(msg)
        if not lower < upper:
            msg = f"empty interval [{lower}, {upper}]"
            raise InvalidArgumentError(msg)
        if alpha == 1 and beta == 1:
            return cls(PolyKind.LEGENDRE, 1.0, 1.0, lower, upper)
        return cls(PolyKind.JACOBI, float(alpha), float(beta), float(lower), float(upper))

    @classmethod
    def legendre(cls, lower: float = 0.0, upper: float = 1.0) -> PolyFamily:
        return cls.jacobi(1.0, 1.0, lower, upper)

    @classmethod
    def hermite(cls) -> PolyFamily:
        return cls(PolyKind.HERMITE, lower=-math.inf, upper=math.inf)

    @classmethod
    def monomial(cls, lower: float = 0.0, upper: float = 1.0) -> PolyFamily:
        """Powers of the variable rescaled from [lower, upper] to [-1, 1]."""
        if not lower < upper:
            msg = f"empty interval [{lower}, {upper}]"
            raise InvalidArgumentError(msg)
        return cls(PolyKind.MONOMIAL, lower=float(lower), upper=float(upper))

    @property
    def bounded(self) -> bool:
        return self.kind is not PolyKind.HERMITE

    @property
    def orthonormal(self) -> bool:
        return self.kind is not PolyKind.MONOMIAL

    @property
    def jacobi_parameters(self) -> tuple[float, float]:
        """Exponents (a, b) of the weight (1-x)^a (1+x)^b on [-1, 1]."""
        return self.beta - 1.0, self.alpha - 1.0

    def describe(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "alpha": self.alpha,
            "beta": self.beta,
            "lower": self.lower,
            "upper": self.upper,
        }


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes ``(J, d)`` and weights ``(J,)`` approximating an integral against a density."""

    nodes: NDArray[np.float64]
    weights: NDArray[np.float64]
    description: RuleKind
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        nodes = np.atleast_2d(np.asarray(self.nodes, dtype=float))
        if nodes.shape[0] == 1 and np.ndim(self.nodes) == 1:
            nodes = nodes.T
        weights = np.asarray(self.weights, dtype=float).ravel()
        if nodes.shape[0] != weights.shape[0]:
            msg = f"{nodes.shape[0]} nodes but {weights.shape[0]} weights"
            raise InvalidArgumentError(msg)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self) -> int:
        return int(self.weights.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.nodes.shape[1])

    def integrate(self, values: ArrayLike) -> float:
        return float(np.dot(self.weights, np.asarray(values, dtype=float)))

    def to_csv(self, path: Path) -> None:
        header = [f"node_{axis + 1}" for axis in range(self.dimension)] + ["weight"]
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for node, weight in zip(self.nodes, self.weights, strict=True):
                writer.writerow([repr(float(value)) for value in node] + [repr(float(weight))])

    @classmethod
    def from_csv(cls, path: Path, description: RuleKind = RuleKind.MONTE_CARLO) -> QuadratureRule:
        with path.open(encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = [[float(value) for value in row] for row in reader if row]
        if header[-1] != "weight":
            msg = f"{path} does not end with a weight column"
            raise InvalidArgumentError(msg)
        data = np.array(rows, dtype=float).reshape(len(rows), len(header))
        return cls(nodes=data[:, :-1], weights=data[:, -1], description=description)


def _jacobi_recurrence(a: float, b: float, n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Monic recurrence on [-1, 1] for weight (1-x)^a (1+x)^b, with b_0 = 1."""
    ab = a + b
    diag = np.empty(n + 1)
    offd = np.empty(n + 1)
    diag[0] = (b - a) / (ab + 2)
    offd[0] = 1.0
    if n >= 1:
        offd[1] = 4 * (a + 1) * (b + 1) / ((ab + 2) ** 2 * (ab + 3))
    k = np.arange(1, n + 1, dtype=float)
    nab = 2 * k + ab
    diag[1:] = (b * b - a * a) / (nab * (nab + 2))
    if n >= 2:
        k = np.arange(2, n + 1, dtype=float)
        nab = 2 * k + ab
        offd[2:] = 4 * (k + a) * (k + b) * k * (k + ab) / (nab**2 * (nab + 1) * (nab - 1))
    return diag, offd


def recurrence_coefficients(family: PolyFamily, n: int) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Return ``(a_k, b_k)`` for k = 0..n of the orthonormal recurrence, with b_0 = 1."""
    if n < 0:
        msg = f"n must be >= 0, got {n}"
        raise InvalidArgumentError(msg)
    if family.kind is PolyKind.MONOMIAL:
        msg = "monomials are not orthogonal and have no three-term recurrence"
        raise UnsupportedError(msg)
    if family.kind is PolyKind.HERMITE:
        diag = np.zeros(n + 1)
        offd = np.arange(n + 1, dtype=float)
        offd[0] = 1.0
        return diag, offd
    a, b = family.jacobi_parameters
    diag, offd = _jacobi_recurrence(a, b, n)
    half_width = (family.upper - family.lower) / 2
    diag = family.lower + half_width * (diag + 1)
    offd[1:] *= half_width**2
    return diag, offd


def _check_support(family: PolyFamily, points: NDArray[np.float64]) -> None:
    if not family.bounded:
        return
    slack = SUPPORT_SLACK * (family.upper - family.lower)
    if np.any(points < family.lower - slack) or np.any(points > family.upper + slack):
        msg = f"points outside [{family.lower}, {family.upper}] for {family.kind.value} family"
        raise DomainError(msg)


def evaluate_univariate(family: PolyFamily, max_degree: int, points: ArrayLike) -> NDArray[np.float64]:
    """Matrix with one row per point and column j holding φ_j."""
    x = np.asarray(points, dtype=float).ravel()
    if max_degree < 0:
        msg = f"max_degree must be >= 0, got {max_degree}"
        raise InvalidArgumentError(msg)
    _check_support(family, x)
    values = np.empty((x.size, max_degree + 1))
    values[:, 0] = 1.0
    if family.kind is PolyKind.MONOMIAL:
        t = (2 * x - family.lower - family.upper) / (family.upper - family.lower)
        for degree in range(1, max_degree + 1):
            values[:, degree] = values[:, degree - 1] * t
        return values
    diag, offd = recurrence_coefficients(family, max_degree)
    root = np.sqrt(offd)
    if max_degree >= 1:
        values[:, 1] = (x - diag[0]) / root[1]
    for degree in range(1, max_degree):
        values[:, degree + 1] = (
            (x - diag[degree]) * values[:, degree] - root[degree] * values[:, degree - 1]
        ) / root[degree + 1]
    return values


def gauss_rule(family: PolyFamily, n: int) -> QuadratureRule:
    """Golub–Welsch Gauss rule with ``n`` nodes, exact to degree ``2n - 1``."""
    if n < 1:
        msg = f"n must be >= 1, got {n}"
        raise InvalidArgumentError(msg)
    if family.kind is PolyKind.MONOMIAL:
        msg = "Gauss rules need an orthogonal family"
        raise UnsupportedError(msg)
    diag, offd = recurrence_coefficients(family, n)
    if n == 1:
        return QuadratureRule(
            nodes=diag[:1],
            weights=np.ones(1),
            description=RuleKind.GAUSS,
            metadata={"family": family.describe(), "order": 1},
        )
    nodes, vectors = eigh_tridiagonal(diag[:n], np.sqrt(offd[1:n]))
    weights = vectors[0, :] ** 2
    order = np.argsort(nodes)
    return QuadratureRule(
        nodes=nodes[order],
        weights=weights[order] / weights.sum(),
        description=RuleKind.GAUSS,
        metadata={"family": family.describe(), "order": n},
    )


def tensor_gauss_rule(families: list[PolyFamily], orders: list[int]) -> QuadratureRule:
    """Tensor product of univariate Gauss rules, last coordinate varying fastest."""
    if len(families) != len(orders):
        msg = "one order per family is required"
        raise InvalidArgumentError(msg)
    rules = [gauss_rule(family, order) for family, order in zip(families, orders, strict=True)]
    grids = np.meshgrid(*[rule.nodes[:, 0] for rule in rules], indexing="ij")
    weight_grids = np.meshgrid(*[rule.weights for rule in rules], indexing="ij")
    nodes = np.column_stack([grid.ravel() for grid in grids])
    weights = np.prod(np.column_stack([grid.ravel() for grid in weight_grids]), axis=1)
    return QuadratureRule(
        nodes=nodes,
        weights=weights,
        description=RuleKind.TENSOR_GAUSS,
        metadata={"families": [family.describe() for family in families], "orders": list(orders)},
    )
