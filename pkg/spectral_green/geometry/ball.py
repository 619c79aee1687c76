"""
Geodesic Balls in Model Manifolds

BallGeometry bundles (m, r, h) and provides the volume functions
V(s) = ω_m ∫_0^s h^{m-1}, S(s) = ω_m h^{m-1}(s) and the integral ∫_0^r V/S,
which is the trace of the radial Green operator and the maximum of the mean
exit time from the ball.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from spectral_green.config import get_default_grid_size
from spectral_green.exceptions import DomainError
from spectral_green.geometry.warping import WarpingFunction
from spectral_green.utils.quadrature import (
    RadialGrid,
    cumulative_integral_values,
    simpson_weights,
    sphere_area,
)

logger = logging.getLogger(__name__)

RADIUS_SLACK = 1e-12


@dataclass(frozen=True, eq=False)
class BallGeometry:
    dim: int
    radius: float
    warping: WarpingFunction

    def __post_init__(self):
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < 2:
            raise DomainError(f"Dimension must be an integer >= 2, got {self.dim!r}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise DomainError(f"Ball radius must be positive and finite, got {self.radius}")
        if self.radius >= self.warping.validity_radius:
            raise DomainError(
                f"Ball radius {self.radius} must be below R_h={self.warping.validity_radius:.12g}"
            )

    @property
    def sphere_area(self) -> float:
        return sphere_area(self.dim)

    def grid(self, n: Optional[int] = None) -> RadialGrid:
        return RadialGrid.build(self.warping, self.dim, self.radius, n or get_default_grid_size())

    def describe(self) -> dict:
        return {"dim": self.dim, "radius": self.radius, **self.warping.describe()}


def _check_radius(geom: BallGeometry, s: float, lower_inclusive: bool) -> float:
    s = float(s)
    bad_low = s < 0 if lower_inclusive else s <= 0
    if bad_low or s > geom.radius * (1 + RADIUS_SLACK):
        bound = "[0" if lower_inclusive else "(0"
        raise DomainError(f"Radius {s} outside {bound}, {geom.radius}]")
    return min(s, geom.radius)


def volume(geom: BallGeometry, s: float, n: Optional[int] = None) -> float:
    """V(s) = ω_m ∫_0^s h^{m-1}(t) dt, composite Simpson on its own grid."""
    s = _check_radius(geom, s, lower_inclusive=True)
    if s == 0.0:
        return 0.0
    n = n or get_default_grid_size()
    t = np.linspace(0.0, s, n + 1)
    integrand = np.asarray(geom.warping.h(t)) ** (geom.dim - 1)
    return geom.sphere_area * float(np.sum(simpson_weights(n, s / n) * integrand))


def boundary_area(geom: BallGeometry, s: float) -> float:
    """S(s) = ω_m h^{m-1}(s)."""
    s = _check_radius(geom, s, lower_inclusive=False)
    return geom.sphere_area * geom.warping.h(s) ** (geom.dim - 1)


def vs_integral(geom: BallGeometry, r: Optional[float] = None, n: Optional[int] = None) -> float:
    """
    ∫_0^r V(s)/S(s) ds.

    r defaults to the ball radius and may be any value below R_h. The
    integrand vanishes at s = 0.
    """
    r = geom.radius if r is None else float(r)
    if not (0 < r < geom.warping.validity_radius):
        raise DomainError(f"Radius {r} outside (0, R_h={geom.warping.validity_radius:.12g})")

    grid = RadialGrid.build(geom.warping, geom.dim, r, n or get_default_grid_size())
    v = cumulative_integral_values(grid.measure, grid.step)
    ratio = np.zeros_like(v)
    ratio[1:] = v[1:] / grid.measure[1:]
    return float(np.sum(grid.simpson * ratio))


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    print("\n" + "=" * 70)
    print("BALL GEOMETRY - CLI Testing")
    print("=" * 70)

    cases = [
        ("euclidean m=2", BallGeometry(2, 1.0, WarpingFunction.euclidean()), 0.25),
        ("hyperbolic m=2", BallGeometry(2, 1.0, WarpingFunction.hyperbolic()), 2 * math.log(math.cosh(0.5))),
        ("spherical m=2", BallGeometry(2, 1.0, WarpingFunction.spherical()), -2 * math.log(math.cos(0.5))),
    ]
    for label, geom, expected in cases:
        value = vs_integral(geom)
        print(f"{label:16s} ∫V/S = {value:.10f}   closed form {expected:.10f}")
