"""
spectral_green Utilities Package

- Radial quadrature (Simpson weights, cumulative integrals, weighted inner products)
- Logging setup for entry points
"""

from .quadrature import (
    RadialFunction,
    RadialGrid,
    cumulative_integral,
    sphere_area,
    weighted_inner,
    weighted_norm,
)
from .log_config import configure_logging

__all__ = [
    "RadialFunction",
    "RadialGrid",
    "cumulative_integral",
    "sphere_area",
    "weighted_inner",
    "weighted_norm",
    "configure_logging",
]
