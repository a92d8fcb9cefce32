from __future__ import annotations

import sys
from enum import Enum

if sys.version_info >= (3, 11):
    from enum import StrEnum
else:  # pragma: no cover - Python 3.10 compatibility

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from pcedep.config import Config


class PolyKind(StrEnum):
    JACOBI = "jacobi"
    LEGENDRE = "legendre"
    HERMITE = "hermite"
    MONOMIAL = "monomial"


class RuleKind(StrEnum):
    """Provenance tag of a quadrature rule."""

    GAUSS = "gauss"
    TENSOR_GAUSS = "tensor-gauss"
    MONTE_CARLO = "monte-carlo"
    SOBOL = "sobol-like"


class WeightKind(StrEnum):
    """Row preconditioning used when building a Leja sequence."""

    CHRISTOFFEL = "christoffel"
    SQRT_DENSITY = "sqrt-density"
    CONSTANT = "constant"


class StrategyKind(StrEnum):
    GS = "gs"
    DOM = "dom"
    NATAF = "nataf"


class TargetSpace(StrEnum):
    GAUSS = "gauss"
    UNIFORM = "uniform"


class MomentSpace(StrEnum):
    """Measure with respect to which surrogate moments were computed."""

    OMEGA = "omega"
    DISCRETE = "discrete"
    DOMINATING = "dominating"
    U_SPACE = "u-space"


class ExperimentName(StrEnum):
    GENZ1D_BASIS = "genz1d-basis"
    CR_STUDY = "cr-study"
    GENZ2D = "genz2d"
    GENZ10D = "genz10d"
    MEAN2D = "mean2d"
    MEAN10D = "mean10d"
    MC_MOMENTS = "mc-moments"
    BANANA = "banana"
    ZONOTOPE = "zonotope"
    DIFFUSION = "diffusion"


class ExperimentConfig(BaseModel):
    """Everything needed to reproduce one experiment run byte for byte."""

    model_config = ConfigDict(frozen=True)

    experiment: ExperimentName
    degrees: list[int] = Field(default_factory=list)
    strategies: list[str] = Field(default_factory=list)
    trials: int = Field(default=Config.TRIALS, ge=1)
    seed: int = 0
    candidates: int = Field(default=Config.CANDIDATES, ge=1)
    test_samples: int | None = Field(default=None, ge=1)
    out: Path = Config.OUTPUT_DIR
    options: dict[str, Any] = Field(default_factory=dict)
    record_timings: bool = False

    @field_validator("degrees")
    @classmethod
    def _non_negative_degrees(cls, value: list[int]) -> list[int]:
        if any(degree < 0 for degree in value):
            msg = "degrees must be non-negative"
            raise ValueError(msg)
        return value


class ResultRow(BaseModel):
    """One (strategy, seed, degree) measurement."""

    model_config = ConfigDict(frozen=True)

    experiment: str
    strategy: str
    seed: int
    degree_or_level: int
    n_samples: int
    l2_error: float | None = None
    mean_rel_error: float | None = None
    kappa_phi: float | None = None
    kappa_gs: float | None = None
    kappa_q: float | None = None
    c_r: float | None = None
    wall_ms: float | None = None


class ExperimentManifest(BaseModel):
    config: dict[str, Any]
    code_version: str
    options_hash: str
    files: list[str]
    row_count: int


class LejaExport(BaseModel):
    points: list[list[float]]
    pivots: list[int]
    weight_kind: WeightKind
    kappa_phi: float
    kappa_q: float | None = None
    seed: int | None = None
    candidates: str = ""


class SurrogateExport(BaseModel):
    strategy: str
    index_set: list[list[int]]
    families: list[dict[str, Any]]
    coefficients: list[float]
    change_of_basis: list[list[float]] | None = None
    kappa_gs: float | None = None
    mean: float
    variance: float
    moment_space: MomentSpace
    seed: int | None = None


class CorrelationExport(BaseModel):
    marginals: list[dict[str, Any]]
    r_z: list[list[float]]
    r_v: list[list[float]]
