from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Any

from pcedep import __version__
from pcedep.config import dumps_json, loads_json
from pcedep.exceptions import InvalidArgumentError
from pcedep.schemas import ExperimentConfig, ExperimentManifest
from pcedep.surrogate import StrategySpec
from scripts.experiments.base import trial_seeds
from scripts.experiments.metrics import summarize
from scripts.experiments.registry import create_experiment, load_builtin_experiments, options_hash
from scripts.experiments.results import read_results, write_results

if TYPE_CHECKING:
    from pcedep.schemas import ResultRow
    from scripts.experiments.base import Experiment

logger = logging.getLogger(__name__)

RESULTS_FILE = "results.csv"
MANIFEST_FILE = "manifest.json"
SUMMARY_FILE = "summary.json"


@dataclass(frozen=True)
class RunOutcome:
    directory: Path
    results_path: Path
    manifest_path: Path
    rows: list[ResultRow]


def resolve_config(config: ExperimentConfig, experiment: Experiment) -> ExperimentConfig:
    """Fill unset degrees, strategies and test-sample count from the experiment's defaults."""
    resolved = config.model_copy(
        update={
            "degrees": config.degrees or list(experiment.default_degrees),
            "strategies": config.strategies or list(experiment.default_strategies),
            "test_samples": config.test_samples or experiment.default_test_samples,
        }
    )
    if not resolved.degrees:
        msg = f"{config.experiment.value} needs at least one degree"
        raise InvalidArgumentError(msg)
    if not resolved.strategies:
        msg = f"{config.experiment.value} needs at least one strategy"
        raise InvalidArgumentError(msg)
    return resolved


def config_identity(config: ExperimentConfig) -> dict[str, Any]:
    """Everything that determines the rows; the output location is excluded."""
    return config.model_dump(mode="json", exclude={"out"})


def run_directory(config: ExperimentConfig) -> Path:
    return config.out / f"{config.experiment.value}_{options_hash(config_identity(config))}"


def _strategy_order(config: ExperimentConfig, rows: list[ResultRow]) -> list[ResultRow]:
    position = {StrategySpec.parse(label).label: index for index, label in enumerate(config.strategies)}
    return sorted(rows, key=lambda row: (position.get(row.strategy, len(position)), row.seed, row.degree_or_level))


def run_experiment(config: ExperimentConfig) -> RunOutcome:
    load_builtin_experiments()
    experiment = create_experiment(config.experiment, config.options)
    resolved = resolve_config(config, experiment)
    logger.info(
        "Running %s: %d strategies x %d degrees x %d trials",
        experiment.name,
        len(resolved.strategies),
        len(resolved.degrees),
        resolved.trials,
    )
    rows: list[ResultRow] = []
    for seed in trial_seeds(resolved.seed, resolved.trials):
        logger.info("Trial seed %d", seed)
        rows.extend(experiment.run_trial(resolved, seed))
    rows = _strategy_order(resolved, rows)

    directory = run_directory(resolved)
    results_path = directory / RESULTS_FILE
    write_results(results_path, rows)
    logger.info("Wrote %s", results_path)

    manifest = ExperimentManifest(
        config=resolved.model_dump(mode="json"),
        code_version=__version__,
        options_hash=options_hash(config_identity(resolved)),
        files=[RESULTS_FILE],
        row_count=len(rows),
    )
    manifest_path = directory / MANIFEST_FILE
    manifest_path.write_bytes(dumps_json(manifest.model_dump(mode="json")))
    logger.info("Wrote %s", manifest_path)
    return RunOutcome(directory=directory, results_path=results_path, manifest_path=manifest_path, rows=rows)


def load_config(path: Path) -> dict[str, Any]:
    """Read an ``ExperimentConfig`` JSON file, or the config stored in a run manifest."""
    data = loads_json(path.read_bytes())
    if not isinstance(data, dict):
        msg = f"{path} does not hold a JSON object"
        raise InvalidArgumentError(msg)
    if "config" in data and "code_version" in data:
        return dict(data["config"])
    return data


def _results_paths(paths: list[Path]) -> list[Path]:
    resolved: list[Path] = []
    for path in paths:
        resolved.append(path / RESULTS_FILE if path.is_dir() else path)
    return resolved


def report(paths: list[Path], output: Path | None = None) -> tuple[Path, dict[str, Any]]:
    """Summarize result CSVs (or run directories) into medians and ratio tables."""
    files = _results_paths(paths)
    if not files:
        msg = "report needs at least one results file"
        raise InvalidArgumentError(msg)
    rows = [row for path in files for row in read_results(path)]
    summary = summarize(rows)
    target = output or files[0].parent / SUMMARY_FILE
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_bytes(dumps_json(summary))
    logger.info("Wrote %s", target)
    return target, summary


def _format_metric(value: float | None) -> str:
    return "" if value is None else f"{value:.3e}"


def write_markdown_report(summary: dict[str, Any], output_path: Path, metric: str = "l2_error") -> None:
    """One table per experiment: strategies as rows, degrees as columns, median ``metric`` in the cells."""
    lines = [f"# Median {metric} over trials", ""]
    for experiment in summary["experiments"]:
        points = [point for point in summary["medians"] if point["experiment"] == experiment]
        degrees = sorted({point["degree_or_level"] for point in points})
        strategies = list(dict.fromkeys(point["strategy"] for point in points))
        cells = {(point["strategy"], point["degree_or_level"]): point[metric] for point in points}
        lines.extend(
            [
                f"## {experiment}",
                "",
                "| Strategy | " + " | ".join(str(degree) for degree in degrees) + " |",
                "|---|" + "---:|" * len(degrees),
            ]
        )
        for strategy in strategies:
            values = " | ".join(_format_metric(cells.get((strategy, degree))) for degree in degrees)
            lines.append(f"| {strategy} | {values} |")
        lines.append("")
    output_path.parent.mkdir(parents=True, exist_ok=True)
    output_path.write_text("\n".join(lines), encoding="utf-8")
    logger.info("Wrote %s", output_path)
