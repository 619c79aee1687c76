"""
Stochastic Completeness Heuristic

A model manifold is stochastically complete iff ∫_0^∞ V(s)/S(s) ds diverges.
We sample I(R) = ∫_0^R V/S at R = R0·2^j and classify the tail of the
increments. This is a numerical heuristic, never a proof.

V/S is accumulated cell by cell in the normalized form
    C(s) = ∫_0^s (h(t)/h(s))^{m-1} dt
    C(s_{i+1}) = C(s_i)·e^{-(m-1)(L_{i+1}-L_i)} + Δ·(1 - e^{-a Δ})/(a Δ)
with L = log h and a the chord slope of (m-1)L on the cell, so neither V nor
S is ever formed.
"""

import logging
import math
from typing import List

import numpy as np

from spectral_green.exceptions import DomainError
from spectral_green.geometry.warping import WarpingFunction
from spectral_green.models.spectral_models import CompletenessReport, CompletenessVerdict

logger = logging.getLogger(__name__)

DEFAULT_DOUBLINGS = 12
DEFAULT_CELLS_PER_DOUBLING = 2048
DECAY_RATIO = 0.9
TAIL_WINDOW = 5


def _relative_cell_integral(x: np.ndarray) -> np.ndarray:
    """(1 - e^{-x})/x with the x -> 0 limit 1."""
    out = np.ones_like(x)
    nz = np.abs(x) > 1e-12
    out[nz] = -np.expm1(-x[nz]) / x[nz]
    return out


def _doubling_nodes(r0: float, doublings: int, cells: int) -> np.ndarray:
    pieces = [np.linspace(0.0, r0, cells + 1)]
    for j in range(1, doublings + 1):
        lo, hi = r0 * 2.0 ** (j - 1), r0 * 2.0 ** j
        pieces.append(np.linspace(lo, hi, cells + 1)[1:])
    return np.concatenate(pieces)


def volume_to_area_ratio(warp: WarpingFunction, m: int, nodes: np.ndarray) -> np.ndarray:
    """V/S at the given increasing nodes (nodes[0] must be 0)."""
    log_h = np.asarray(warp.log_h(nodes), dtype=float)
    ratio = np.zeros_like(nodes)
    if nodes.size < 2:
        return ratio

    # first cell: h(t) ≈ t near the origin
    ratio[1] = nodes[1] / m

    dt = np.diff(nodes)[1:]
    d_log = (m - 1) * np.diff(log_h)[1:]
    decay = np.exp(-d_log)
    cell = dt * _relative_cell_integral(d_log)
    for i in range(2, nodes.size):
        ratio[i] = ratio[i - 1] * decay[i - 2] + cell[i - 2]
    return ratio


def stochastic_diagnostic(
    warp: WarpingFunction,
    m: int,
    r0: float = 1.0,
    doublings: int = DEFAULT_DOUBLINGS,
    cells_per_doubling: int = DEFAULT_CELLS_PER_DOUBLING,
) -> CompletenessReport:
    """
    Classify ∫_0^∞ V/S as divergent (complete) or convergent (incomplete).

    Args:
        warp: Warping function with R_h = ∞
        m: Dimension
        r0: First radius; radii double from there
        doublings: Number of doublings of the radius
        cells_per_doubling: Quadrature cells per doubling

    Returns:
        CompletenessReport; the verdict is a heuristic and may be inconclusive
    """
    if not warp.is_complete():
        raise DomainError(
            f"Stochastic completeness needs R_h = ∞; {warp.family.value} has R_h={warp.validity_radius:.12g}"
        )
    if m < 2:
        raise DomainError(f"Dimension must be >= 2, got {m}")
    if doublings < TAIL_WINDOW + 1:
        raise DomainError(f"Need at least {TAIL_WINDOW + 1} doublings, got {doublings}")

    nodes = _doubling_nodes(r0, doublings, cells_per_doubling)
    ratio = volume_to_area_ratio(warp, m, nodes)
    if not np.all(np.isfinite(ratio)):
        raise DomainError("V/S became non-finite; the warping is not usable this far out")

    # trapezoid on each cell, then read off I(R_j) at the doubling radii
    cumulative = np.concatenate([[0.0], np.cumsum(0.5 * np.diff(nodes) * (ratio[1:] + ratio[:-1]))])
    marks = [cells_per_doubling * (j + 1) for j in range(doublings + 1)]
    radii = [float(nodes[k]) for k in marks]
    partials = [float(cumulative[k]) for k in marks]
    increments = [partials[j] - partials[j - 1] for j in range(1, len(partials))]

    tail = increments[-TAIL_WINDOW:]
    ratios: List[float] = [b / a if a > 0 else math.inf for a, b in zip(tail[:-1], tail[1:])]

    if all(q < DECAY_RATIO for q in ratios):
        verdict = CompletenessVerdict.CONVERGES_INCOMPLETE
    elif all(b >= a for a, b in zip(tail[:-1], tail[1:])):
        verdict = CompletenessVerdict.DIVERGES_COMPLETE
    else:
        verdict = CompletenessVerdict.INCONCLUSIVE

    logger.info(f"✓ Completeness heuristic for {warp.family.value} m={m}: {verdict.value}")
    return CompletenessReport(
        verdict=verdict,
        radii=radii,
        partial_integrals=partials,
        increments=increments,
        tail_ratios=ratios,
    )
