"""
spectral_green HTTP API

FastAPI application exposing the CLI jobs over HTTP.
"""

from .server import app

__all__ = ["app"]
