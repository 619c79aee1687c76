"""
Spectral Series Identities

Exact identities between eigenvalue series and closed forms:
- Radial harmonic identity: Σ_k 1/λ_k^rad = ∫_0^r V/S on any model ball
- Euclidean l-series: Σ_i 1/λ_{l,i} = r²/(2(2l+m)),
  Σ_i 1/λ_{l,i}² = r⁴/(2(2l+m)²(2l+m+2))
- Whole-spectrum Σ δ(l,m)/λ_{l,i}² with multiplicities, closed forms for m = 2, 3

Closed forms (r = 1; scale by r⁴):
| multiplicity | m = 2 | m = 3 |
|---|---|---|
| paper  | (π²-6)/96    | (12-π²)/64  |
| sphere | π²/48 - 5/32 | 2/3 - π²/16 |
| none   | (π²-6)/96    | π²/32 - 7/24 |
"""

import logging
import math
from typing import List, Optional

from spectral_green.exceptions import ConsistencyError, DomainError
from spectral_green.geometry.ball import BallGeometry, vs_integral
from spectral_green.models.spectral_models import (
    MultiplicityMode,
    SeriesKind,
    SeriesReport,
    SolveConfig,
)
from spectral_green.services.eigensolve import l_spectrum_euclid, radial_spectrum

logger = logging.getLogger(__name__)


# =============================================================================
# Multiplicities
# =============================================================================

def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def delta_multiplicity(l: int, m: int, mode: MultiplicityMode = MultiplicityMode.PAPER) -> int:
    """
    Multiplicity δ(l, m) attached to the l-eigenvalues.

    PAPER:  C(m-1+l, l) - C(m-2+l, l-1)   (1 for m=2, l+1 for m=3)
    SPHERE: C(m-1+l, l) - C(m-3+l, l-2)   (2 for m=2, l>=1; 2l+1 for m=3)
    NONE:   1
    """
    if l < 0:
        raise DomainError(f"Angular order l must be non-negative, got {l}")
    if m < 2:
        raise DomainError(f"Dimension must be >= 2, got {m}")
    mode = MultiplicityMode(mode)
    if mode == MultiplicityMode.NONE:
        return 1
    if mode == MultiplicityMode.SPHERE:
        return binomial(m - 1 + l, l) - binomial(m - 3 + l, l - 2)
    return binomial(m - 1 + l, l) - binomial(m - 2 + l, l - 1)


# =============================================================================
# Closed forms and bounds
# =============================================================================

_WHOLE_SPECTRUM_CLOSED_FORMS = {
    (MultiplicityMode.PAPER, 2): (math.pi ** 2 - 6.0) / 96.0,
    (MultiplicityMode.PAPER, 3): (12.0 - math.pi ** 2) / 64.0,
    (MultiplicityMode.SPHERE, 2): math.pi ** 2 / 48.0 - 5.0 / 32.0,
    (MultiplicityMode.SPHERE, 3): 2.0 / 3.0 - math.pi ** 2 / 16.0,
    (MultiplicityMode.NONE, 2): (math.pi ** 2 - 6.0) / 96.0,
    (MultiplicityMode.NONE, 3): math.pi ** 2 / 32.0 - 7.0 / 24.0,
}


def _check_ball(m: int, r: float) -> None:
    if m < 2:
        raise DomainError(f"Dimension must be >= 2, got {m}")
    if not r > 0:
        raise DomainError(f"Radius must be positive, got {r}")


def euclid_sum_l(m: int, r: float, l: int, power: int) -> float:
    """Σ_i λ_{l,i}^{-power} on the Euclidean ball, power ∈ {1, 2}."""
    _check_ball(m, r)
    if l < 0:
        raise DomainError(f"Angular order l must be non-negative, got {l}")
    a = 2 * l + m
    if power == 1:
        return r ** 2 / (2.0 * a)
    if power == 2:
        return r ** 4 / (2.0 * a ** 2 * (a + 2))
    raise DomainError(f"Only powers 1 and 2 have closed forms, got {power}")


def lower_bound_cor22(m: int, r: float, l: int, k: int) -> float:
    """λ_{l,k} ≥ 2k(m + 2l)/r² on the Euclidean ball."""
    _check_ball(m, r)
    if k < 1 or l < 0:
        raise DomainError(f"Need k >= 1 and l >= 0, got k={k}, l={l}")
    return 2.0 * k * (m + 2 * l) / r ** 2


def radial_lower_bound(geom: BallGeometry, k: int) -> float:
    """λ_k^rad ≥ k / ∫_0^r V/S on any model ball."""
    if k < 1:
        raise DomainError(f"Need k >= 1, got {k}")
    return k / vs_integral(geom)


# =============================================================================
# Series reports
# =============================================================================

def radial_harmonic_identity(geom: BallGeometry, count: int, config: Optional[SolveConfig] = None) -> SeriesReport:
    """
    Compare Σ_{k≤K} 1/λ_k^rad with ∫_0^r V/S; the gap is the exact remainder.

    Args:
        geom: Ball of a model manifold
        count: Number of radial eigenvalues K in the partial sum
        config: Solver settings (defaults to SolveConfig())

    Returns:
        SeriesReport with closed_form = ∫V/S and gap = closed_form - partial_sum

    Raises:
        ConsistencyError: the partial sum is not strictly below ∫V/S
    """
    config = config or SolveConfig()
    closed = vs_integral(geom, n=config.grid_size)
    pairs = radial_spectrum(geom, count, config)
    partial = sum(1.0 / p.eigenvalue for p in pairs)

    if not partial < closed:
        raise ConsistencyError(f"Harmonic partial sum {partial:.15g} is not below ∫V/S = {closed:.15g}")

    gap = closed - partial
    logger.info(f"✓ Harmonic identity: Σ_{{k≤{count}}} 1/λ_k = {partial:.12g}, ∫V/S = {closed:.12g}, gap {gap:.3e}")
    return SeriesReport(
        kind=SeriesKind.HARMONIC,
        closed_form=closed,
        partial_sum=partial,
        terms_used=count,
        tail_bound=gap,
        gap=gap,
        converged=all(p.converged for p in pairs),
    )


def l_series_report(m: int, r: float, l: int, count: int, power: int = 2, config: Optional[SolveConfig] = None) -> SeriesReport:
    """Partial sums Σ_{i≤K} λ_{l,i}^{-power} against euclid_sum_l."""
    closed = euclid_sum_l(m, r, l, power)
    pairs = l_spectrum_euclid(m, r, l, count, config)
    partial = sum(p.eigenvalue ** (-power) for p in pairs)

    if not partial < closed:
        raise ConsistencyError(f"l={l} partial sum {partial:.15g} is not below closed form {closed:.15g}")

    return SeriesReport(
        kind=SeriesKind.HS,
        closed_form=closed,
        partial_sum=partial,
        terms_used=count,
        tail_bound=closed - partial,
        gap=closed - partial,
        converged=all(p.converged for p in pairs),
    )


def _tail_constant(mode: MultiplicityMode) -> float:
    return 2.0 if mode == MultiplicityMode.SPHERE else 1.0


def _partial_whole_sum(m: int, r: float, mode: MultiplicityMode, l_max: int) -> float:
    return math.fsum(delta_multiplicity(l, m, mode) * euclid_sum_l(m, r, l, 2) for l in range(l_max + 1))


def whole_spectrum_sum_sq(m: int, r: float, mode: MultiplicityMode = MultiplicityMode.PAPER, l_max: int = 200) -> SeriesReport:
    """
    Σ_{l≤Lmax} δ(l,m) Σ_i 1/λ_{l,i}² from the closed l-series, plus a tail bound.

    With δ ≤ C(l+1)^{m-2} and 2(2l+m)²(2l+m+2) ≥ 16(l+1)³ the tail beyond Lmax
    is at most C r⁴ (Lmax+1)^{m-4} / (16(4-m)) for m = 2, 3. Counting
    multiplicity in m ≥ 4 the series diverges; the tail is reported as
    infinite with partial sums at Lmax/8, /4, /2, Lmax.
    """
    _check_ball(m, r)
    if l_max < 0:
        raise DomainError(f"l_max must be non-negative, got {l_max}")
    mode = MultiplicityMode(mode)

    partial = _partial_whole_sum(m, r, mode, l_max)
    closed: Optional[float] = None
    if (mode, m) in _WHOLE_SPECTRUM_CLOSED_FORMS:
        closed = _WHOLE_SPECTRUM_CLOSED_FORMS[(mode, m)] * r ** 4

    growth: List[float] = []
    notes: List[str] = []
    if mode == MultiplicityMode.NONE:
        tail = r ** 4 / (32.0 * (l_max + 1) ** 2)
    elif m in (2, 3):
        tail = _tail_constant(mode) * r ** 4 * (l_max + 1) ** (m - 4) / (16.0 * (4 - m))
    else:
        tail = math.inf
        growth = [_partial_whole_sum(m, r, mode, l_max // d) for d in (8, 4, 2, 1)]
        notes.append(f"Series diverges for m={m} with {mode.value} multiplicity; no closed form")
        logger.warning(f"⚠️ Whole-spectrum series diverges for m={m} ({mode.value} multiplicity)")

    gap = None if closed is None else closed - partial
    return SeriesReport(
        kind=SeriesKind.WHOLE,
        closed_form=closed,
        partial_sum=partial,
        terms_used=l_max + 1,
        tail_bound=tail,
        gap=gap,
        growth=growth,
        notes=notes,
    )
