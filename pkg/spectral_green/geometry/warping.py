"""
Warping Functions

A rotationally symmetric model manifold carries the metric dt² + h(t)² dθ²
with h(0) = 0, h'(0) = 1 and h > 0 on (0, R_h). Supported families:
- Euclidean:  h(t) = t
- Hyperbolic: h(t) = sinh(t√κ)/√κ
- Spherical:  h(t) = sin(t√κ)/√κ      (R_h = π/√κ)
- CubicExp:   h(t) = t·exp(t³)        (stochastically incomplete)
- Tabulated:  monotone cubic interpolation of user samples (R_h = last t)

log_h is evaluated in log space so radii in the thousands never overflow.
"""

import csv
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Optional, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from spectral_green.exceptions import DomainError, TableFormatError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MIN_TABLE_ROWS = 16
TABLE_ORIGIN_TOL = 1e-12
TABLE_SLOPE_TOL = 1e-6


class WarpingFamily(str, Enum):
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    SPHERICAL = "spherical"
    CUBIC_EXP = "cubicexp"
    TABULATED = "custom"


@dataclass(frozen=True, eq=False)
class WarpingFunction:
    family: WarpingFamily
    curvature: float = 1.0
    table_t: Optional[np.ndarray] = None
    table_h: Optional[np.ndarray] = None
    _interp: Optional[PchipInterpolator] = field(default=None, repr=False)

    # =========================================================================
    # Constructors
    # =========================================================================

    @classmethod
    def euclidean(cls) -> "WarpingFunction":
        return cls(WarpingFamily.EUCLIDEAN)

    @classmethod
    def hyperbolic(cls, curvature: float = 1.0) -> "WarpingFunction":
        if not curvature > 0:
            raise DomainError(f"Hyperbolic curvature parameter must be positive, got {curvature}")
        return cls(WarpingFamily.HYPERBOLIC, float(curvature))

    @classmethod
    def spherical(cls, curvature: float = 1.0) -> "WarpingFunction":
        if not curvature > 0:
            raise DomainError(f"Spherical curvature parameter must be positive, got {curvature}")
        return cls(WarpingFamily.SPHERICAL, float(curvature))

    @classmethod
    def cubic_exp(cls) -> "WarpingFunction":
        return cls(WarpingFamily.CUBIC_EXP)

    @classmethod
    def tabulated(cls, t: np.ndarray, h: np.ndarray) -> "WarpingFunction":
        t = np.asarray(t, dtype=float)
        h = np.asarray(h, dtype=float)
        _validate_table(t, h)
        return cls(
            WarpingFamily.TABULATED,
            table_t=t,
            table_h=h,
            _interp=PchipInterpolator(t, h, extrapolate=False),
        )

    @classmethod
    def from_name(cls, name: str, curvature: float = 1.0, table_path: Optional[Union[str, Path]] = None) -> "WarpingFunction":
        """Build a warping from its CLI family name."""
        try:
            family = WarpingFamily(name.strip().lower())
        except ValueError:
            valid = ", ".join(f.value for f in WarpingFamily)
            raise DomainError(f"Unknown warping family {name!r} (expected one of: {valid})")

        if family == WarpingFamily.TABULATED:
            if table_path is None:
                raise DomainError("Family 'custom' requires a warping table (--h-table)")
            return load_warping_table(table_path)
        if family == WarpingFamily.HYPERBOLIC:
            return cls.hyperbolic(curvature)
        if family == WarpingFamily.SPHERICAL:
            return cls.spherical(curvature)
        if family == WarpingFamily.CUBIC_EXP:
            return cls.cubic_exp()
        return cls.euclidean()

    # =========================================================================
    # Evaluation
    # =========================================================================

    @property
    def sqrt_curvature(self) -> float:
        return math.sqrt(self.curvature)

    @property
    def validity_radius(self) -> float:
        """R_h: h > 0 on (0, R_h)."""
        if self.family == WarpingFamily.SPHERICAL:
            return math.pi / self.sqrt_curvature
        if self.family == WarpingFamily.TABULATED:
            return float(self.table_t[-1])
        return math.inf

    def _check_domain(self, t: np.ndarray) -> None:
        if np.any(t < 0):
            raise DomainError("Warping evaluated at negative radius")
        if self.family == WarpingFamily.TABULATED and np.any(t > self.table_t[-1]):
            raise DomainError(f"Radius beyond tabulated range [0, {self.table_t[-1]}]")

    def h(self, t: ArrayLike) -> ArrayLike:
        x = np.asarray(t, dtype=float)
        self._check_domain(x)
        s = self.sqrt_curvature
        if self.family == WarpingFamily.EUCLIDEAN:
            out = x.copy()
        elif self.family == WarpingFamily.HYPERBOLIC:
            out = np.sinh(s * x) / s
        elif self.family == WarpingFamily.SPHERICAL:
            out = np.sin(s * x) / s
        elif self.family == WarpingFamily.CUBIC_EXP:
            out = x * np.exp(x ** 3)
        else:
            out = self._interp(x)
        return out if np.ndim(t) else float(out)

    def h_prime(self, t: ArrayLike) -> ArrayLike:
        x = np.asarray(t, dtype=float)
        self._check_domain(x)
        s = self.sqrt_curvature
        if self.family == WarpingFamily.EUCLIDEAN:
            out = np.ones_like(x)
        elif self.family == WarpingFamily.HYPERBOLIC:
            out = np.cosh(s * x)
        elif self.family == WarpingFamily.SPHERICAL:
            out = np.cos(s * x)
        elif self.family == WarpingFamily.CUBIC_EXP:
            out = np.exp(x ** 3) * (1.0 + 3.0 * x ** 3)
        else:
            out = self._interp.derivative()(x)
        return out if np.ndim(t) else float(out)

    def log_h(self, t: ArrayLike) -> ArrayLike:
        """log h(t); -inf at t = 0."""
        x = np.asarray(t, dtype=float)
        self._check_domain(x)
        s = self.sqrt_curvature
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.family == WarpingFamily.EUCLIDEAN:
                out = np.log(x)
            elif self.family == WarpingFamily.HYPERBOLIC:
                u = s * x
                out = u + np.log(-np.expm1(-2.0 * u)) - math.log(2.0 * s)
            elif self.family == WarpingFamily.SPHERICAL:
                out = np.log(np.sin(s * x) / s)
            elif self.family == WarpingFamily.CUBIC_EXP:
                out = np.log(x) + x ** 3
            else:
                out = np.log(self._interp(x))
        return out if np.ndim(t) else float(out)

    def is_complete(self) -> bool:
        return math.isinf(self.validity_radius)

    def describe(self) -> dict:
        info = {"family": self.family.value}
        if self.family in (WarpingFamily.HYPERBOLIC, WarpingFamily.SPHERICAL):
            info["curvature"] = self.curvature
        if self.family == WarpingFamily.TABULATED:
            info["rows"] = int(self.table_t.size)
        return info


# =============================================================================
# Tabulated warpings
# =============================================================================

def _validate_table(t: np.ndarray, h: np.ndarray) -> None:
    if t.ndim != 1 or t.shape != h.shape:
        raise TableFormatError("Warping table columns t and h must have equal length")
    if t.size < MIN_TABLE_ROWS:
        raise TableFormatError(f"Warping table needs at least {MIN_TABLE_ROWS} rows, got {t.size}")
    if not np.all(np.isfinite(t)) or not np.all(np.isfinite(h)):
        raise TableFormatError("Warping table contains non-finite values")
    if t[0] != 0.0:
        raise TableFormatError(f"Warping table must start at t=0, got t={t[0]}")
    if np.any(np.diff(t) <= 0):
        raise TableFormatError("Warping table t values must be strictly increasing")
    if abs(h[0]) > TABLE_ORIGIN_TOL:
        raise TableFormatError(f"Warping table must have h(0)=0, got {h[0]}")
    slope = (h[1] - h[0]) / (t[1] - t[0])
    if abs(slope - 1.0) > TABLE_SLOPE_TOL:
        raise TableFormatError(f"Warping table must have h'(0)=1, first slope is {slope:.9g}")
    if np.any(h[1:] <= 0):
        raise TableFormatError("Warping table must have h > 0 for t > 0")


def load_warping_table(path: Union[str, Path]) -> WarpingFunction:
    """Load a CSV with header `t,h` into a Tabulated warping."""
    path = Path(path)
    if not path.is_file():
        raise TableFormatError(f"Warping table not found: {path}")

    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = [cell.strip().lower() for cell in next(reader, [])]
        if header != ["t", "h"]:
            raise TableFormatError(f"Warping table header must be 't,h', got {','.join(header)!r}")
        rows = [row for row in reader if row and any(cell.strip() for cell in row)]

    try:
        data = np.array([[float(a), float(b)] for a, b in rows])
    except ValueError as e:
        raise TableFormatError(f"Warping table {path} has a non-numeric or malformed row: {e}")

    if data.size == 0:
        raise TableFormatError(f"Warping table {path} is empty")
    warp = WarpingFunction.tabulated(data[:, 0], data[:, 1])
    logger.info(f"✓ Loaded warping table {path} ({data.shape[0]} rows, R_h={warp.validity_radius:.6g})")
    return warp
