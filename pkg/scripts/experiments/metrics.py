from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from itertools import permutations
from typing import TYPE_CHECKING, Any

import numpy as np

if TYPE_CHECKING:
    from pcedep.schemas import ResultRow

METRICS = ("l2_error", "mean_rel_error", "kappa_phi", "kappa_gs", "kappa_q", "c_r", "wall_ms")


@dataclass(frozen=True)
class MedianPoint:
    experiment: str
    strategy: str
    degree_or_level: int
    trials: int
    n_samples: float
    l2_error: float | None = None
    mean_rel_error: float | None = None
    kappa_phi: float | None = None
    kappa_gs: float | None = None
    kappa_q: float | None = None
    c_r: float | None = None
    wall_ms: float | None = None


def _median(values: list[float | None]) -> float | None:
    present = [value for value in values if value is not None]
    return float(np.median(present)) if present else None


def median_over_seeds(rows: list[ResultRow]) -> list[MedianPoint]:
    """Per-(experiment, strategy, degree) medians; independent of row order."""
    groups: dict[tuple[str, str, int], list[ResultRow]] = {}
    for row in rows:
        groups.setdefault((row.experiment, row.strategy, row.degree_or_level), []).append(row)
    points: list[MedianPoint] = []
    for (experiment, strategy, degree), members in sorted(groups.items()):
        metrics = {metric: _median([getattr(row, metric) for row in members]) for metric in METRICS}
        points.append(
            MedianPoint(
                experiment=experiment,
                strategy=strategy,
                degree_or_level=degree,
                trials=len({row.seed for row in members}),
                n_samples=float(np.median([row.n_samples for row in members])),
                **metrics,
            )
        )
    return points


def error_ratio_table(points: list[MedianPoint], metric: str = "l2_error") -> dict[str, dict[str, float]]:
    """``{"a/b": {degree: median_a / median_b}}`` for every ordered pair of strategies."""
    by_strategy: dict[str, dict[int, float]] = {}
    for point in points:
        value = getattr(point, metric)
        if value is not None:
            by_strategy.setdefault(point.strategy, {})[point.degree_or_level] = value
    table: dict[str, dict[str, float]] = {}
    for left, right in permutations(sorted(by_strategy), 2):
        shared = sorted(set(by_strategy[left]) & set(by_strategy[right]))
        ratios: dict[str, float] = {}
        for degree in shared:
            numerator = by_strategy[left][degree]
            denominator = by_strategy[right][degree]
            if denominator == 0:
                ratios[str(degree)] = math.inf if numerator > 0 else 1.0
            else:
                ratios[str(degree)] = numerator / denominator
        if ratios:
            table[f"{left}/{right}"] = ratios
    return table


def summarize(rows: list[ResultRow]) -> dict[str, Any]:
    points = median_over_seeds(rows)
    experiments = sorted({row.experiment for row in rows})
    return {
        "experiments": experiments,
        "row_count": len(rows),
        "medians": [asdict(point) for point in points],
        "ratios": {
            experiment: error_ratio_table([point for point in points if point.experiment == experiment])
            for experiment in experiments
        },
    }
