"""Shared fixtures: model balls and solver settings."""

import numpy as np
import pytest

from spectral_green.geometry.ball import BallGeometry
from spectral_green.geometry.warping import WarpingFunction
from spectral_green.models.spectral_models import SolveConfig


@pytest.fixture
def disk() -> BallGeometry:
    """Unit disk in R^2."""
    return BallGeometry(2, 1.0, WarpingFunction.euclidean())


@pytest.fixture
def ball3() -> BallGeometry:
    return BallGeometry(3, 1.0, WarpingFunction.euclidean())


@pytest.fixture
def hyperbolic_disk() -> BallGeometry:
    return BallGeometry(2, 1.0, WarpingFunction.hyperbolic())


@pytest.fixture
def solve_config() -> SolveConfig:
    return SolveConfig(grid_size=4096, tol=1e-10, max_iter=500)


@pytest.fixture
def coarse_config() -> SolveConfig:
    return SolveConfig(grid_size=512, tol=1e-10, max_iter=500)


@pytest.fixture(autouse=True)
def _default_grid(monkeypatch):
    monkeypatch.delenv("SPECTRAL_GREEN_GRID", raising=False)


def write_sinh_table(path, t_max: float = 2.0, rows: int = 2001) -> None:
    """CSV warping table sampling h(t) = sinh(t)."""
    t = np.linspace(0.0, t_max, rows)
    lines = ["t,h"] + [f"{a:.17g},{b:.17g}" for a, b in zip(t, np.sinh(t))]
    path.write_text("\n".join(lines) + "\n")
