"""
spectral_green - Dirichlet spectra of geodesic balls via Green operators

Numerical toolkit for rotationally symmetric balls in model manifolds:
- Geometry: warping functions, volumes, ∫V/S, stochastic completeness heuristic
- Operators: radial Green operator T, Euclidean G_l, trace and Hilbert-Schmidt norm
- Services: power iteration with deflation, series identities, exit-time
  moments, extrinsic-ball bounds

Entry points: `python -m spectral_green` (CLI) and spectral_green.api.app (HTTP).
"""

__version__ = "0.1.0"

from spectral_green.exceptions import (
    ConsistencyError,
    DegenerateStartError,
    DomainError,
    GridMismatchError,
    MaterializationError,
    SpectralGreenError,
    TableFormatError,
)
from spectral_green.geometry import BallGeometry, WarpingFunction, vs_integral
from spectral_green.models import SolveConfig
from spectral_green.services import radial_spectrum, l_spectrum_euclid

__all__ = [
    # Geometry
    "BallGeometry",
    "WarpingFunction",
    "vs_integral",
    # Solving
    "SolveConfig",
    "radial_spectrum",
    "l_spectrum_euclid",
    # Errors
    "SpectralGreenError",
    "DomainError",
    "GridMismatchError",
    "TableFormatError",
    "DegenerateStartError",
    "ConsistencyError",
    "MaterializationError",
    "__version__",
]
