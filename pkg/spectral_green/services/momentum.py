"""
Exit-Time Moment Hierarchy

The hierarchy φ_0 = 1, φ_k = k·G(φ_{k-1}) gives the moments of the Brownian
exit time from the ball: φ_k = k!·G^k(1), so φ_1 is the mean exit time and
∫ φ_1 dμ the torsional rigidity. We store G^k(1) as a unit-norm profile and
a log scale, which keeps K = 40 (and far beyond) representable.

With B_k = ∫ G^k(1) dμ:
- B_{k-1}/B_k decreases to λ_1
- (B_{k-2} - λ_1 B_{k-1})/(B_{k-1} - λ_1 B_k) estimates λ_2 from above
- B_k = Σ_i a_i² λ_i^{-k}, a_i = ∫ u_i dμ (spectral expansion)
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import logsumexp

from spectral_green.exceptions import DomainError, GridMismatchError, MaterializationError
from spectral_green.geometry.ball import BallGeometry
from spectral_green.models.spectral_models import (
    EigenPair,
    ExpansionCheck,
    Lambda1Estimate,
    Lambda2Estimate,
    MomentSequence,
    SolveConfig,
)
from spectral_green.operators.green import RadialGreenKernel, apply_t
from spectral_green.utils.quadrature import RadialFunction, weighted_integral, weighted_norm

logger = logging.getLogger(__name__)

MIN_LAMBDA1_ORDER = 5
MAX_RAW_ORDER = 20
DEFAULT_SELECTION_FLOOR = 1e-7
RELIABLE_DENOMINATOR = 1e-13
MONOTONE_SLACK = 1e-12


def solve_hierarchy(geom: BallGeometry, k_max: int, config: Optional[SolveConfig] = None) -> MomentSequence:
    """
    G^k(1) for k = 0..k_max in scaled form.

    Args:
        geom: Ball of a model manifold
        k_max: Highest iterate K (>= 2)
        config: Solver settings; only grid_size is used

    Returns:
        MomentSequence of unit-norm profiles with their log scales
    """
    if k_max < 2:
        raise DomainError(f"Moment hierarchy needs K >= 2, got {k_max}")
    config = config or SolveConfig()
    G = RadialGreenKernel(geom, config.grid_size)

    ones = G.grid.ones()
    norm = weighted_norm(ones)
    profiles: List[RadialFunction] = [ones / norm]
    log_scales: List[float] = [math.log(norm)]
    for _ in range(k_max):
        w = G.apply(profiles[-1])
        w_norm = weighted_norm(w)
        profiles.append(w / w_norm)
        log_scales.append(log_scales[-1] + math.log(w_norm))

    mantissas = [weighted_integral(p) for p in profiles]
    if min(mantissas) <= 0:
        raise DomainError("Moment iterates lost positivity; refine the grid")

    logger.info(f"✓ Moment hierarchy to K={k_max} on {geom.warping.family.value} ball (m={geom.dim}, r={geom.radius:g})")
    return MomentSequence(k_max=k_max, log_scales=log_scales, mantissas=mantissas, profiles=profiles, grid=G.grid)


def exit_moment(seq: MomentSequence, k: int) -> float:
    """B_k = ∫ G^k(1) dμ (underflows to 0 for very large k)."""
    return math.exp(seq.log_moment(k))


def scaled_moment_profile(seq: MomentSequence, k: int) -> Tuple[float, RadialFunction]:
    """(log c, v) with φ_k = c·v and ‖v‖ = 1."""
    if not 0 <= k <= seq.k_max:
        raise DomainError(f"Order {k} outside 0..{seq.k_max}")
    return math.lgamma(k + 1) + seq.log_scales[k], seq.profiles[k]


def raw_moment_profile(seq: MomentSequence, k: int) -> RadialFunction:
    """φ_k = k!·G^k(1) as plain floats; only for k ≤ 20."""
    if k > MAX_RAW_ORDER:
        raise MaterializationError(f"φ_{k} is only available in scaled form (k > {MAX_RAW_ORDER})")
    log_factor, profile = scaled_moment_profile(seq, k)
    values = math.exp(log_factor) * profile.values
    if not np.all(np.isfinite(values)):
        raise MaterializationError(f"φ_{k} overflows double precision")
    return RadialFunction(profile.grid, values)


def torsional_rigidity(seq: MomentSequence) -> float:
    """∫ E dμ with E = G(1) the mean exit time."""
    return exit_moment(seq, 1)


def mean_exit_time(geom: BallGeometry, config: Optional[SolveConfig] = None) -> RadialFunction:
    """E = T(1); its maximum E(0) equals ∫_0^r V/S."""
    config = config or SolveConfig()
    grid = geom.grid(config.grid_size)
    return apply_t(geom, grid.ones())


def lambda1_from_moments(seq: MomentSequence) -> Lambda1Estimate:
    """λ_1 ≈ B_{K-1}/B_K with the full ratio history."""
    if seq.k_max < MIN_LAMBDA1_ORDER:
        raise DomainError(f"λ_1 from moments needs K >= {MIN_LAMBDA1_ORDER}, got {seq.k_max}")
    ratios = [seq.ratio(k) for k in range(1, seq.k_max + 1)]
    monotone = all(b <= a * (1 + MONOTONE_SLACK) for a, b in zip(ratios[:-1], ratios[1:]))
    if not monotone:
        logger.warning(f"⚠️ Moment ratios are not monotonically decreasing (K={seq.k_max})")
    return Lambda1Estimate(value=ratios[-1], ratios=ratios, monotone=monotone)


def lambda2_bound_from_moments(
    seq: MomentSequence,
    lambda1: float,
    selection_floor: float = DEFAULT_SELECTION_FLOOR,
) -> Lambda2Estimate:
    """
    (r_{k-1} - λ_1)/(1 - λ_1/r_k) with r_k = B_{k-1}/B_k.

    Evaluated at the largest k whose scaled denominator 1 - λ_1/r_k is at
    least selection_floor; the numerator and denominator both decay like
    (λ_1/λ_2)^k, so large k only measures cancellation error.
    """
    if seq.k_max < 3:
        raise DomainError(f"λ_2 bound needs K >= 3, got {seq.k_max}")

    history: List[Optional[float]] = []
    chosen: Optional[Tuple[int, float, float]] = None
    last_defined: Optional[Tuple[int, float, float]] = None
    for k in range(2, seq.k_max + 1):
        r_prev, r_k = seq.ratio(k - 1), seq.ratio(k)
        denominator = 1.0 - lambda1 / r_k
        if denominator > 0:
            estimate = (r_prev - lambda1) / denominator
            history.append(estimate)
            last_defined = (k, estimate, denominator)
            if denominator >= selection_floor:
                chosen = (k, estimate, denominator)
        else:
            history.append(None)

    if chosen is None:
        logger.warning("⚠️ No moment order has a usable λ_2 denominator")
        if last_defined is None:
            return Lambda2Estimate(value=math.nan, scaled_denominator=0.0, reliable=False, history=history)
        k, estimate, denominator = last_defined
        return Lambda2Estimate(value=estimate, k_used=k, scaled_denominator=denominator, reliable=False, history=history)

    k, estimate, denominator = chosen
    reliable = denominator >= RELIABLE_DENOMINATOR
    if not reliable:
        logger.warning(f"⚠️ λ_2 denominator {denominator:.2e} below {RELIABLE_DENOMINATOR:.0e}; estimate unreliable")
    return Lambda2Estimate(value=estimate, k_used=k, scaled_denominator=denominator, reliable=reliable, history=history)


def momentum_spectral_expansion(seq: MomentSequence, eigenpairs: Sequence[EigenPair], k_min: int = 3) -> ExpansionCheck:
    """Relative gap |B_k / Σ_i a_i² λ_i^{-k} - 1| for k = k_min..K."""
    if not eigenpairs:
        raise DomainError("Spectral expansion needs at least one eigenpair")
    if len(eigenpairs) < 3:
        logger.warning(f"⚠️ Spectral expansion with {len(eigenpairs)} eigenpairs only resolves large k")
    for pair in eigenpairs:
        if not pair.eigenfunction.grid.is_compatible(seq.grid):
            raise GridMismatchError("Eigenpairs and moments were computed on different grids")

    log_weights = np.array([2.0 * math.log(abs(weighted_integral(p.eigenfunction))) for p in eigenpairs])
    log_lambdas = np.array([math.log(p.eigenvalue) for p in eigenpairs])

    k_values = list(range(k_min, seq.k_max + 1))
    discrepancies = [
        abs(math.expm1(seq.log_moment(k) - float(logsumexp(log_weights - k * log_lambdas))))
        for k in k_values
    ]
    return ExpansionCheck(k_values=k_values, discrepancies=discrepancies, max_discrepancy=max(discrepancies))
