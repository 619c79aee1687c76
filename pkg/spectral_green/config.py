"""
Runtime configuration

Environment variables (a local .env file is honoured):
- SPECTRAL_GREEN_GRID: default number of grid intervals (even, >= 64)
- SPECTRAL_GREEN_LOG_FORMAT: "json" for structured logs, anything else for text

Config files passed with --config are plain key=value files read with
python-dotenv; keys are CLI flag names.
"""

import os
import logging
from pathlib import Path
from typing import Dict, Optional, Union

from dotenv import dotenv_values, load_dotenv

from spectral_green.exceptions import DomainError

logger = logging.getLogger(__name__)

load_dotenv()


# =============================================================================
# Defaults
# =============================================================================

GRID_ENV_VAR = "SPECTRAL_GREEN_GRID"
LOG_FORMAT_ENV_VAR = "SPECTRAL_GREEN_LOG_FORMAT"

DEFAULT_GRID_SIZE = 4096
MIN_GRID_SIZE = 64
DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 500


def validate_grid_size(n: int) -> int:
    """Grid sizes must be even (composite Simpson) and at least 64."""
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"Grid size must be an integer, got {n!r}")
    n = int(n)
    if n < MIN_GRID_SIZE or n % 2 != 0:
        raise DomainError(f"Grid size must be even and >= {MIN_GRID_SIZE}, got {n}")
    return n


def get_default_grid_size() -> int:
    raw = os.getenv(GRID_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_GRID_SIZE
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"{GRID_ENV_VAR} must be an integer, got {raw!r}")
    return validate_grid_size(value)


def json_logging_requested() -> bool:
    return os.getenv(LOG_FORMAT_ENV_VAR, "").strip().lower() == "json"


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """
    Read a key=value config file.

    Keys are normalized to argparse destinations ("max-iter" -> "max_iter").
    Empty values are dropped.
    """
    path = Path(path)
    if not path.is_file():
        raise DomainError(f"Config file not found: {path}")

    raw: Dict[str, Optional[str]] = dotenv_values(path)
    values = {
        key.strip().lstrip("-").replace("-", "_").lower(): value.strip()
        for key, value in raw.items()
        if value is not None and value.strip() != ""
    }
    logger.debug(f"Loaded {len(values)} config keys from {path}")
    return values
