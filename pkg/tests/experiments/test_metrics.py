from __future__ import annotations

import math

from pcedep.schemas import ResultRow
from scripts.experiments.metrics import MedianPoint, error_ratio_table, median_over_seeds, summarize


def _row(strategy: str, seed: int, degree: int, l2_error: float | None, c_r: float | None = None) -> ResultRow:
    return ResultRow(
        experiment="genz2d",
        strategy=strategy,
        seed=seed,
        degree_or_level=degree,
        n_samples=degree + 1,
        l2_error=l2_error,
        c_r=c_r,
    )


def test_single_trial_median_is_the_value() -> None:
    (point,) = median_over_seeds([_row("gs(1,1)", 0, 2, 0.125)])

    assert point.l2_error == 0.125
    assert point.trials == 1
    assert point.n_samples == 3.0
    assert point.c_r is None


def test_medians_ignore_row_order() -> None:
    rows = [_row("gs(1,1)", seed, 1, value) for seed, value in enumerate([1.0, 3.0, 2.0, None])]

    forward = median_over_seeds(rows)
    backward = median_over_seeds(list(reversed(rows)))

    assert forward == backward
    assert forward[0].l2_error == 2.0
    assert forward[0].trials == 4


def test_ratio_table_pairs_strategies_on_shared_degrees() -> None:
    points = [
        MedianPoint("genz2d", "dom(1,1)", 1, 1, 2.0, l2_error=0.5),
        MedianPoint("genz2d", "dom(1,1)", 2, 1, 3.0, l2_error=0.25),
        MedianPoint("genz2d", "gs(1,1)", 1, 1, 2.0, l2_error=0.125),
        MedianPoint("genz2d", "gs(1,1)", 3, 1, 4.0, l2_error=0.05),
    ]

    table = error_ratio_table(points)

    assert table == {"dom(1,1)/gs(1,1)": {"1": 4.0}, "gs(1,1)/dom(1,1)": {"1": 0.25}}


def test_ratio_against_an_exact_fit() -> None:
    points = [
        MedianPoint("genz2d", "a", 1, 1, 2.0, l2_error=0.0),
        MedianPoint("genz2d", "b", 1, 1, 2.0, l2_error=0.5),
        MedianPoint("genz2d", "c", 1, 1, 2.0, l2_error=0.0),
    ]

    table = error_ratio_table(points)

    assert math.isinf(table["b/a"]["1"])
    assert table["a/c"]["1"] == 1.0
    assert table["a/b"]["1"] == 0.0


def test_summary_groups_by_experiment() -> None:
    rows = [_row("gs(1,1)", 0, 1, 0.5), _row("dom(1,1)", 0, 1, 1.0, c_r=3.5)]
    rows.append(rows[0].model_copy(update={"experiment": "mean2d"}))

    summary = summarize(rows)

    assert summary["experiments"] == ["genz2d", "mean2d"]
    assert summary["row_count"] == 3
    assert len(summary["medians"]) == 3
    assert summary["ratios"]["genz2d"]["dom(1,1)/gs(1,1)"] == {"1": 2.0}
    assert summary["ratios"]["mean2d"] == {}
