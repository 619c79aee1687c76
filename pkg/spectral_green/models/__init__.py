"""
Models Package

Pydantic configuration, result and job models.
"""

from .spectral_models import (
    AssembledSpectrum,
    BoundsInput,
    BoundsReport,
    CompletenessReport,
    CompletenessVerdict,
    ConvergenceTable,
    EigenPair,
    ExpansionCheck,
    JobRequest,
    JobSpec,
    Lambda1Estimate,
    Lambda2Estimate,
    MomentSequence,
    MultiplicityMode,
    SeriesKind,
    SeriesReport,
    SolveConfig,
    SpectrumEntry,
)

__all__ = [
    # Config
    "SolveConfig",
    "JobRequest",
    "JobSpec",
    # Eigensolver
    "EigenPair",
    "SpectrumEntry",
    "AssembledSpectrum",
    "ConvergenceTable",
    # Series / completeness
    "MultiplicityMode",
    "SeriesKind",
    "SeriesReport",
    "CompletenessVerdict",
    "CompletenessReport",
    # Moments
    "MomentSequence",
    "Lambda1Estimate",
    "Lambda2Estimate",
    "ExpansionCheck",
    # Bounds
    "BoundsInput",
    "BoundsReport",
]
