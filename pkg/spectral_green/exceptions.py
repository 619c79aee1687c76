"""
Exception hierarchy for spectral_green

Every failure raised by the package derives from SpectralGreenError:
- DomainError: inputs outside the domain of an operation (also a ValueError)
- GridMismatchError: radial functions sampled on different grids
- TableFormatError: malformed tabulated warping files
- DegenerateStartError: deflation projection annihilated the start vector
- ConsistencyError: an internal numerical cross-check failed
- MaterializationError: a raw moment iterate is not representable

Non-convergence of an iteration is reported on the result, never raised.
"""


class SpectralGreenError(Exception):
    """Base class for all spectral_green errors."""


class DomainError(SpectralGreenError, ValueError):
    """Argument outside the valid domain of an operation."""


class GridMismatchError(DomainError):
    """Operands live on incompatible radial grids."""


class TableFormatError(DomainError):
    """Tabulated warping CSV is missing or violates its invariants."""


class DegenerateStartError(SpectralGreenError, ValueError):
    """Start vector has no component outside the deflation basis."""


class ConsistencyError(SpectralGreenError, RuntimeError):
    """A numerical consistency check failed."""


class MaterializationError(SpectralGreenError, OverflowError):
    """A scaled quantity cannot be materialized in floating point."""
