"""Experiments keyed by ``ExperimentName``; scenario modules register themselves on import."""

from __future__ import annotations

import hashlib
from collections.abc import Callable
from typing import Any

import orjson

from pcedep.schemas import ExperimentName
from scripts.experiments.base import Experiment

ExperimentFactory = Callable[[dict[str, Any]], Experiment]

_EXPERIMENTS: dict[ExperimentName, ExperimentFactory] = {}


def register_experiment(name: ExperimentName) -> Callable[[ExperimentFactory], ExperimentFactory]:
    """Bind an experiment class to its name; the class must report the same ``name``."""

    def decorator(factory: ExperimentFactory) -> ExperimentFactory:
        declared = getattr(factory, "name", name)
        if declared != name:
            msg = f"{factory!r} declares name {declared!r} but is registered as {name.value!r}"
            raise ValueError(msg)
        if name in _EXPERIMENTS and _EXPERIMENTS[name] is not factory:
            msg = f"Experiment {name.value!r} is already registered"
            raise ValueError(msg)
        _EXPERIMENTS[name] = factory
        return factory

    return decorator


def experiment_name(name: str | ExperimentName) -> ExperimentName:
    try:
        return ExperimentName(name)
    except ValueError:
        available = ", ".join(available_experiments())
        msg = f"Unknown experiment {name!r}. Available: {available}"
        raise KeyError(msg) from None


def create_experiment(name: str | ExperimentName, options: dict[str, Any] | None = None) -> Experiment:
    key = experiment_name(name)
    if key not in _EXPERIMENTS:
        available = ", ".join(available_experiments())
        msg = f"Experiment {key.value!r} has no registered implementation. Available: {available}"
        raise KeyError(msg)
    return _EXPERIMENTS[key](options or {})


def available_experiments() -> list[str]:
    return sorted(name.value for name in _EXPERIMENTS)


def canonical_options(options: dict[str, Any]) -> str:
    """Compact JSON with sorted keys, so equal options hash equally."""
    return orjson.dumps(options, option=orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY).decode("utf-8")


def options_hash(options: dict[str, Any]) -> str:
    return hashlib.sha1(canonical_options(options).encode("utf-8")).hexdigest()[:10]  # noqa: S324


def load_builtin_experiments() -> None:
    from scripts.experiments.scenarios import chemistry as _chemistry  # noqa: F401, PLC0415
    from scripts.experiments.scenarios import diffusion as _diffusion  # noqa: F401, PLC0415
    from scripts.experiments.scenarios import domination as _domination  # noqa: F401, PLC0415
    from scripts.experiments.scenarios import genz as _genz  # noqa: F401, PLC0415
