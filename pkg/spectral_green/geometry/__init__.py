"""
Geometry Package

Rotationally symmetric model manifolds and their geodesic balls:
- Warping functions (Euclidean, hyperbolic, spherical, cubic-exponential, tabulated)
- Volume, boundary area and ∫V/S
- Stochastic completeness heuristic
"""

from .warping import WarpingFamily, WarpingFunction, load_warping_table
from .ball import BallGeometry, boundary_area, volume, vs_integral
from .completeness import stochastic_diagnostic

__all__ = [
    # Warping
    "WarpingFamily",
    "WarpingFunction",
    "load_warping_table",
    # Balls
    "BallGeometry",
    "volume",
    "boundary_area",
    "vs_integral",
    # Completeness
    "stochastic_diagnostic",
]
