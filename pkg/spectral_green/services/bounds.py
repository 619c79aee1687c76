"""
Extrinsic-Ball Spectral Bounds

Bounds on Σ 1/λ_k² for extrinsic balls Ω_r of proper minimal submanifolds
of Euclidean space, m ∈ {2, 3}:
    lower = A_m·ω_m·(r^m/vol)·r⁴
    upper = B_m·ζ(4/m)·(vol/r^m)^{4/m}·r⁴
with A_m = (1/(4m²))(1 + m/(4+m) - 2m/(2+m)) and B_m = e^{4/m}/(16π²).

ω_m here is the volume of the unit ball (π, 4π/3), not the unit-sphere area
used by the Green operators.
"""

import logging
import math
from typing import Dict

import numpy as np

from spectral_green.exceptions import DomainError
from spectral_green.models.spectral_models import BoundsInput, BoundsReport

logger = logging.getLogger(__name__)

UNIT_BALL_VOLUME: Dict[int, float] = {2: math.pi, 3: 4.0 * math.pi / 3.0}

ZETA_DIRECT_TERMS = 1_000_000
VOLUME_MONOTONICITY_SLACK = 1e-9


def a_constant(m: int) -> float:
    _check_dim(m)
    return (1.0 + m / (4.0 + m) - 2.0 * m / (2.0 + m)) / (4.0 * m * m)


def b_constant(m: int) -> float:
    _check_dim(m)
    return math.exp(4.0 / m) / (16.0 * math.pi ** 2)


def _check_dim(m: int) -> None:
    if m not in UNIT_BALL_VOLUME:
        raise DomainError(f"Extrinsic bounds need m ∈ {{2, 3}} (Σ1/λ² diverges otherwise), got m={m}")


def zeta_eval(s: float) -> float:
    """
    Riemann ζ(s), s > 1: direct sum to N = 10⁶ plus the Euler-Maclaurin tail
    N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12 - s(s+1)(s+2) N^{-s-3}/720.
    """
    if not s > 1:
        raise DomainError(f"ζ(s) needs s > 1, got {s}")
    n = ZETA_DIRECT_TERMS
    k = np.arange(n - 1, 0, -1, dtype=float)
    direct = float(np.sum(k ** (-s)))
    tail = (
        n ** (1.0 - s) / (s - 1.0)
        + 0.5 * n ** (-s)
        + s * n ** (-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n ** (-s - 3.0) / 720.0
    )
    return direct + tail


def _report(m: int, lower: float, upper: float, zeta_value: float) -> BoundsReport:
    if not lower < upper:
        raise DomainError(f"Degenerate bounds: lower {lower:.12g} ≥ upper {upper:.12g}")
    return BoundsReport(
        lower=lower,
        upper=upper,
        a_constant=a_constant(m),
        b_constant=b_constant(m),
        zeta_value=zeta_value,
        unit_ball_volume=UNIT_BALL_VOLUME[m],
    )


def thm_mark_bounds(data: BoundsInput) -> BoundsReport:
    """
    Volume-based bracket for Σ 1/λ_k² on an extrinsic ball.

    Args:
        data: Dimension m ∈ {2, 3}, radius r and the volume of Ω_r

    Returns:
        BoundsReport with lower/upper bounds; a note is attached when the
        volume is below the flat-ball volume ω_m r^m
    """
    m, r, vol = data.m, data.r, data.volume
    _check_dim(m)
    if vol is None:
        raise DomainError("Volume bounds need the volume of the extrinsic ball")
    omega = UNIT_BALL_VOLUME[m]
    zeta_value = zeta_eval(4.0 / m)

    lower = a_constant(m) * omega * (r ** m / vol) * r ** 4
    upper = b_constant(m) * zeta_value * (vol / r ** m) ** (4.0 / m) * r ** 4
    report = _report(m, lower, upper, zeta_value)

    if vol < omega * r ** m * (1.0 - VOLUME_MONOTONICITY_SLACK):
        note = f"volume {vol:.12g} is below ω_m r^m = {omega * r ** m:.12g}; impossible for a minimal submanifold"
        logger.warning(f"⚠️ {note}")
        report.notes.append(note)
    return report


def ends_bounds(m: int, r: float, ends: float) -> BoundsReport:
    """Bracket in terms of the number of ends (m=3) or total geometric index (m=2)."""
    _check_dim(m)
    if not ends >= 1:
        raise DomainError(f"Number of ends must be >= 1, got {ends}")
    if not r > 0:
        raise DomainError(f"Radius must be positive, got {r}")
    zeta_value = zeta_eval(4.0 / m)
    lower = a_constant(m) / ends * r ** 4
    upper = b_constant(m) * zeta_value * (UNIT_BALL_VOLUME[m] * ends) ** (4.0 / m) * r ** 4
    return _report(m, lower, upper, zeta_value)


def cly_lower_bound(m: int, vol: float, k: int) -> float:
    """λ_k ≥ 4π (k/e)^{2/m} / vol^{2/m}."""
    if k < 1:
        raise DomainError(f"Need k >= 1, got {k}")
    if not vol > 0 or m < 2:
        raise DomainError(f"Need vol > 0 and m >= 2, got vol={vol}, m={m}")
    return 4.0 * math.pi * (k / math.e) ** (2.0 / m) / vol ** (2.0 / m)


def extrinsic_bounds(data: BoundsInput) -> BoundsReport:
    """
    Bracket Σ 1/λ_k² from whichever extrinsic data is given.

    Args:
        data: BoundsInput carrying a volume, a number of ends, or both

    Returns:
        The volume bracket when a volume is present, otherwise the ends bracket
    """
    if data.volume is not None:
        return thm_mark_bounds(data)
    return ends_bounds(data.m, data.r, data.ends)
