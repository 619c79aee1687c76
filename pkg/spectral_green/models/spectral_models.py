"""
Pydantic Models for Spectral Computations

Configuration, results and job descriptions shared by the services, the CLI
and the HTTP API. Models that carry sampled functions allow arbitrary types
and exclude the arrays from serialization.
"""

import math
from enum import Enum
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from spectral_green.config import (
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
    get_default_grid_size,
    validate_grid_size,
)
from spectral_green.utils.quadrature import RadialFunction, RadialGrid


# ============================================================================
# Enums
# ============================================================================

class MultiplicityMode(str, Enum):
    """How the multiplicity δ(l, m) of l-eigenvalues is counted."""
    PAPER = "paper"      # C(m-1+l, l) - C(m-2+l, l-1)
    SPHERE = "sphere"    # dimension of degree-l spherical harmonics
    NONE = "none"        # δ ≡ 1


class CompletenessVerdict(str, Enum):
    CONVERGES_INCOMPLETE = "converges_incomplete"
    DIVERGES_COMPLETE = "diverges_complete"
    INCONCLUSIVE = "inconclusive"


class SeriesKind(str, Enum):
    HARMONIC = "harmonic"
    HS = "hs"
    WHOLE = "whole"


# ============================================================================
# Configuration
# ============================================================================

class SolveConfig(BaseModel):
    """Power iteration parameters"""
    tol: float = Field(default=DEFAULT_TOL, gt=0.0, lt=1.0, description="Relative ratio tolerance")
    max_iter: int = Field(default=DEFAULT_MAX_ITER, ge=2)
    grid_size: int = Field(default_factory=get_default_grid_size, description="Grid intervals N")
    reproject_every: int = Field(default=1, ge=1, description="Re-orthogonalize every k steps")

    @field_validator("grid_size")
    @classmethod
    def _even_grid(cls, v: int) -> int:
        return validate_grid_size(v)

    def describe(self) -> Dict[str, float]:
        return {"grid": self.grid_size, "tol": self.tol, "max_iter": self.max_iter}


# ============================================================================
# Eigensolver Results
# ============================================================================

class EigenPair(BaseModel):
    """Eigenvalue of -L with its weighted-unit-norm eigenfunction"""
    eigenvalue: float
    eigenfunction: RadialFunction = Field(exclude=True)
    residual: float = Field(ge=0.0, description="‖T(u) - u/λ‖ / ‖u/λ‖")
    iterations: int
    converged: bool
    ratio_history: List[float] = Field(default_factory=list, description="𝒯^k for k = 1..iterations-1")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def summary(self, index: int) -> Dict[str, object]:
        return {
            "index": index,
            "lambda": self.eigenvalue,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
        }


class SpectrumEntry(BaseModel):
    l: int = Field(ge=0)
    index: int = Field(ge=1)
    eigenvalue: float
    multiplicity: int = Field(ge=0)
    converged: bool = True


class AssembledSpectrum(BaseModel):
    """Euclidean ball spectrum across angular orders with Σ 1/λ² bookkeeping"""
    mode: MultiplicityMode
    l_max: int
    i_max: int
    entries: List[SpectrumEntry] = Field(default_factory=list)
    partial_sum_sq: float = 0.0
    tail_within_l_max: float = Field(0.0, description="Σ_{l≤Lmax} δ·(closed form - computed partial)")
    tail_beyond_l_max: float = Field(0.0, description="Bound on Σ_{l>Lmax}; may be infinite")
    closed_form: Optional[float] = None

    @property
    def converged(self) -> bool:
        return all(e.converged for e in self.entries)


class ConvergenceTable(BaseModel):
    """Ratio table 𝒯^j(φ_i) for the deflation family φ_0 = 1, φ_i = φ_{i-1} - λ T(φ_{i-1})"""
    orders: List[int]
    columns: List[List[float]] = Field(description="columns[i][j] = 𝒯^{orders[j]}(φ_i)")
    eigenvalues: List[float]


# ============================================================================
# Series, Moments, Bounds
# ============================================================================

class SeriesReport(BaseModel):
    kind: SeriesKind
    closed_form: Optional[float] = None
    partial_sum: float
    terms_used: int
    tail_bound: float
    gap: Optional[float] = None
    growth: List[float] = Field(default_factory=list, description="Partial sums at Lmax/8, /4, /2, Lmax")
    converged: bool = True
    notes: List[str] = Field(default_factory=list)


class CompletenessReport(BaseModel):
    verdict: CompletenessVerdict
    heuristic: bool = True
    radii: List[float]
    partial_integrals: List[float]
    increments: List[float]
    tail_ratios: List[float]


class MomentSequence(BaseModel):
    """
    Iterates G^k(1) = exp(log_scales[k])·profiles[k], k = 0..K.

    Profiles have unit weighted norm; mantissas[k] = ∫ profiles[k] dμ, so the
    exit moment B_k = ∫ G^k(1) dμ = exp(log_scales[k])·mantissas[k].
    """
    k_max: int = Field(ge=2)
    log_scales: List[float]
    mantissas: List[float]
    profiles: List[RadialFunction] = Field(exclude=True)
    grid: RadialGrid = Field(exclude=True)

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def log_moment(self, k: int) -> float:
        return self.log_scales[k] + math.log(self.mantissas[k])

    def ratio(self, k: int) -> float:
        """B_{k-1}/B_k."""
        return math.exp(self.log_moment(k - 1) - self.log_moment(k))


class Lambda1Estimate(BaseModel):
    value: float
    ratios: List[float] = Field(description="B_{k-1}/B_k for k = 1..K")
    monotone: bool


class Lambda2Estimate(BaseModel):
    value: float
    k_used: Optional[int] = None
    scaled_denominator: float
    reliable: bool
    history: List[Optional[float]] = Field(default_factory=list, description="Estimate at k = 2..K (None where undefined)")


class ExpansionCheck(BaseModel):
    k_values: List[int]
    discrepancies: List[float]
    max_discrepancy: float


class BoundsInput(BaseModel):
    """Extrinsic ball data: volume of Ω_r and/or the number of ends 𝓔"""
    m: int
    r: float = Field(gt=0.0)
    volume: Optional[float] = Field(default=None, gt=0.0)
    ends: Optional[float] = Field(default=None, gt=0.0, description="Geometric index sum (m=2) or number of ends (m=3)")

    @model_validator(mode="after")
    def _needs_volume_or_ends(self) -> "BoundsInput":
        if self.volume is None and self.ends is None:
            raise ValueError("BoundsInput needs a volume or a number of ends")
        return self


class BoundsReport(BaseModel):
    lower: float
    upper: float
    a_constant: float
    b_constant: float
    zeta_value: float
    unit_ball_volume: float
    notes: List[str] = Field(default_factory=list)


# ============================================================================
# Jobs (CLI and HTTP)
# ============================================================================

CommandName = Literal["spectrum", "series", "momentum", "bounds", "complete"]


class JobRequest(BaseModel):
    """Parameters of a spectral_green job (the HTTP request body)"""
    family: str = "euclidean"
    curvature: float = 1.0
    h_table: Optional[str] = None
    dim: int = 2
    radius: float = 1.0
    grid: Optional[int] = None
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    output: Literal["json", "csv"] = "json"
    workers: int = Field(default=1, ge=1)

    # spectrum
    l: int = Field(default=0, ge=0)
    count: int = Field(default=3, ge=1)
    table: bool = False

    # series
    mode: SeriesKind = SeriesKind.HARMONIC
    multiplicity: MultiplicityMode = MultiplicityMode.PAPER
    lmax: int = Field(default=200, ge=0)
    imax: Optional[int] = Field(default=None, ge=1)

    # momentum
    k_max: int = Field(default=40, ge=2)

    # bounds
    volume: Optional[float] = Field(default=None, gt=0.0)
    ends: Optional[float] = Field(default=None, gt=0.0)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"family": "euclidean", "dim": 2, "radius": 1.0, "count": 3}
        }
    )

    @field_validator("grid")
    @classmethod
    def _even_grid(cls, v: Optional[int]) -> Optional[int]:
        return None if v is None else validate_grid_size(v)

    def solve_config(self) -> SolveConfig:
        kwargs = {"tol": self.tol, "max_iter": self.max_iter}
        if self.grid is not None:
            kwargs["grid_size"] = self.grid
        return SolveConfig(**kwargs)


class JobSpec(JobRequest):
    """One invocation of a spectral_green command"""
    command: CommandName
