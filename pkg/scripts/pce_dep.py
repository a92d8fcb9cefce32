"""Command-line entry point: run experiments, summarize them, dump Leja sequences and Nataf correlations.

Exit codes: 0 on success, 1 on a numerical failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from pcedep.config import Config, dumps_json, loads_json
from pcedep.exceptions import InvalidArgumentError, NumericalError, UnsupportedError
from pcedep.measure import Marginal
from pcedep.multi_index import total_degree_set
from pcedep.schemas import ExperimentConfig, ExperimentName
from pcedep.surrogate import design_strategy
from pcedep.transform import NatafTransform
from scripts.experiments.runner import load_config, report, run_experiment, write_markdown_report
from scripts.experiments.scenarios.common import available_densities, create_density

logging.basicConfig(
    level=Config.LOG_LEVEL,
    format="%(asctime)s %(levelname)-8s %(name)s  %(message)s",
    datefmt="%H:%M:%S",
)
logger = logging.getLogger(__name__)


def parse_options(values: list[str] | None) -> dict[str, Any]:
    options: dict[str, Any] = {}
    for value in values or []:
        if "=" not in value:
            msg = f"Option {value!r} must be key=value"
            raise ValueError(msg)
        key, raw = value.split("=", 1)
        options[key] = _parse_scalar(raw)
    return options


def _parse_scalar(value: str) -> bool | int | float | str:
    lowered = value.lower()
    if lowered in {"true", "false"}:
        return lowered == "true"
    try:
        return int(value)
    except ValueError:
        pass
    try:
        return float(value)
    except ValueError:
        return value


def parse_degrees(value: str) -> list[int]:
    """``1..15`` (inclusive range) or ``1,2,5``."""
    text = value.replace(" ", "")
    try:
        if ".." in text:
            start, stop = text.split("..", 1)
            degrees = list(range(int(start), int(stop) + 1))
        else:
            degrees = [int(part) for part in text.split(",") if part]
    except ValueError:
        msg = f"Degrees {value!r} must look like 1..15 or 1,2,5"
        raise ValueError(msg) from None
    if not degrees:
        msg = f"Degrees {value!r} select nothing"
        raise ValueError(msg)
    return degrees


def _run_config(args: argparse.Namespace) -> ExperimentConfig:
    data: dict[str, Any] = load_config(args.config) if args.config else {}
    overrides = {
        "experiment": args.experiment,
        "degrees": parse_degrees(args.degrees) if args.degrees else None,
        "strategies": args.strategies,
        "trials": args.trials,
        "seed": args.seed,
        "candidates": args.candidates,
        "test_samples": args.test_samples,
        "out": args.out,
    }
    data.update({key: value for key, value in overrides.items() if value is not None})
    if args.options:
        data["options"] = {**data.get("options", {}), **parse_options(args.options)}
    if args.timings:
        data["record_timings"] = True
    if "experiment" not in data:
        msg = "Provide --experiment or a --config that names one"
        raise ValueError(msg)
    return ExperimentConfig.model_validate(data)


def _command_run(args: argparse.Namespace) -> None:
    outcome = run_experiment(_run_config(args))
    logger.info("%d rows in %s", len(outcome.rows), outcome.directory)


def _command_report(args: argparse.Namespace) -> None:
    target, summary = report(args.paths, args.out)
    if args.markdown:
        write_markdown_report(summary, args.markdown, args.metric)
    logger.info("Summarized %d rows into %s", summary["row_count"], target)


def _write_json(data: object, output: Path | None) -> None:
    payload = dumps_json(data)
    if output is None:
        sys.stdout.buffer.write(payload)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_bytes(payload)
    logger.info("Wrote %s", output)


def _command_leja(args: argparse.Namespace) -> None:
    density = create_density(args.density)
    design = design_strategy(
        args.strategy,
        density,
        total_degree_set(density.dimension, args.degree),
        candidates=args.candidates,
        seed=args.seed,
    )
    _write_json(design.sequence.to_export(seed=args.seed).model_dump(mode="json"), args.out)


def _command_nataf_corr(args: argparse.Namespace) -> None:
    data = loads_json(args.config.read_bytes())
    if not isinstance(data, dict) or "marginals" not in data or "correlation" not in data:
        msg = f"{args.config} must hold 'marginals' and 'correlation'"
        raise ValueError(msg)
    marginals = [Marginal.from_description(description) for description in data["marginals"]]
    transform = NatafTransform.from_correlation(marginals, data["correlation"])
    _write_json(transform.to_export().model_dump(mode="json"), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pce-dep", description="PCE experiments for dependent inputs")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run one named experiment")
    run.add_argument("--experiment", choices=[name.value for name in ExperimentName])
    run.add_argument("--degrees", help="1..15 or 1,2,5; defaults to the experiment's sweep")
    run.add_argument("--strategies", nargs="+", help="e.g. 'gs(1,1)' 'dom(2,5)' 'nataf(gauss)'")
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--candidates", type=int)
    run.add_argument("--test-samples", type=int)
    run.add_argument("--out", type=Path)
    run.add_argument("--config", type=Path, help="ExperimentConfig JSON or a run manifest")
    run.add_argument("--options", nargs="*", default=[], help="Experiment options as key=value")
    run.add_argument("--timings", action="store_true", help="Fill the wall_ms column")
    run.set_defaults(handler=_command_run)

    summary = commands.add_parser("report", help="Median and ratio summary of result CSVs")
    summary.add_argument("paths", type=Path, nargs="+", help="results.csv files or run directories")
    summary.add_argument("--out", type=Path)
    summary.add_argument("--markdown", type=Path, help="Also write a markdown table of medians")
    summary.add_argument("--metric", default="l2_error")
    summary.set_defaults(handler=_command_report)

    leja = commands.add_parser("leja", help="Dump the Leja sequence of one strategy")
    leja.add_argument("--density", choices=available_densities(), required=True)
    leja.add_argument("--strategy", required=True)
    leja.add_argument("--degree", type=int, required=True)
    leja.add_argument("--candidates", type=int, default=Config.CANDIDATES)
    leja.add_argument("--seed", type=int, default=0)
    leja.add_argument("--out", type=Path)
    leja.set_defaults(handler=_command_leja)

    nataf = commands.add_parser("nataf-corr", help="Solve for the Gaussian correlation of a Nataf map")
    nataf.add_argument("--config", type=Path, required=True, help="JSON with 'marginals' and 'correlation'")
    nataf.add_argument("--out", type=Path)
    nataf.set_defaults(handler=_command_nataf_corr)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except NumericalError as exc:
        logger.error("%s failed: %s", args.command, exc)  # noqa: TRY400
        return 1
    except (ValidationError, InvalidArgumentError, UnsupportedError, KeyError, ValueError, FileNotFoundError) as exc:
        parser.error(str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())
