"""
Operators Package

Green operators of geodesic balls and their trace / Hilbert-Schmidt functionals.
"""

from .green import (
    EuclidKernelL,
    RadialGreenKernel,
    apply_green_l,
    apply_t,
    green_hs_norm_sq,
    green_trace,
)

__all__ = [
    "RadialGreenKernel",
    "EuclidKernelL",
    "apply_t",
    "apply_green_l",
    "green_trace",
    "green_hs_norm_sq",
]
