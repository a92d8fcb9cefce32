import os
from pathlib import Path

import orjson
from dotenv import load_dotenv

load_dotenv()

JSON_OPTIONS = orjson.OPT_SERIALIZE_NUMPY | orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


class Config:
    """Library and experiment defaults loaded from environment variables."""

    OUTPUT_DIR: Path = Path(os.getenv("PCE_OUTPUT_DIR", "data/experiments"))
    CANDIDATES: int = int(os.getenv("PCE_CANDIDATES", "10000"))
    TEST_SAMPLES: int = int(os.getenv("PCE_TEST_SAMPLES", "10000"))
    TRIALS: int = int(os.getenv("PCE_TRIALS", "10"))
    LOG_LEVEL: str = os.getenv("PCE_LOG_LEVEL", "INFO").upper()

    RANK_TOLERANCE: float = float(os.getenv("PCE_RANK_TOLERANCE", "1e-12"))
    PIVOT_TOLERANCE: float = float(os.getenv("PCE_PIVOT_TOLERANCE", "1e-13"))


def dumps_json(data: object) -> bytes:
    """Serialize to indented JSON with sorted keys.

    numpy arrays and scalars are serialized natively by orjson, and sorted keys
    keep manifests byte-identical across runs.
    """
    return orjson.dumps(data, option=JSON_OPTIONS) + b"\n"


def loads_json(data: bytes | str) -> object:
    return orjson.loads(data)
