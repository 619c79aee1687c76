"""
Logging setup for the CLI and API entry points

Library modules only call logging.getLogger(__name__); handlers are installed
here, once, by whichever entry point runs.
"""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from spectral_green.config import json_logging_requested

TEXT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
JSON_FORMAT = "%(asctime)s %(name)s %(levelname)s %(message)s"


def configure_logging(level: int = logging.WARNING, json_format: Optional[bool] = None) -> logging.Handler:
    """
    Install a single stderr handler on the spectral_green logger.

    Stdout is reserved for result documents, so logs always go to stderr.
    json_format=None defers to SPECTRAL_GREEN_LOG_FORMAT.
    """
    if json_format is None:
        json_format = json_logging_requested()

    handler = logging.StreamHandler(sys.stderr)
    if json_format:
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))

    root = logging.getLogger("spectral_green")
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False
    return handler
