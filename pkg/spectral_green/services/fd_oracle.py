"""
Finite-Difference Eigenvalue Oracle

Independent check on the Green-operator eigensolver. Conservative
finite-volume discretization of
    -(p u')' + ν_l p u / h² = λ p u,   p = h^{m-1},  ν_l = l(l+m-2)
with u'(0) = 0 (l = 0) or u(0) = 0 (l ≥ 1) and u(r) = 0. Cell masses are
Simpson integrals of p over each control volume; after diagonal mass scaling
the pencil becomes a symmetric tridiagonal matrix.
"""

import logging
from typing import List

import numpy as np
from scipy.linalg import eigh_tridiagonal

from spectral_green.exceptions import DomainError
from spectral_green.geometry.ball import BallGeometry

logger = logging.getLogger(__name__)

DEFAULT_FD_INTERVALS = 20000


def finite_difference_spectrum(geom: BallGeometry, count: int, l: int = 0, n: int = DEFAULT_FD_INTERVALS) -> List[float]:
    """Lowest `count` eigenvalues of -L_l on the ball, ascending."""
    if count < 1 or count >= n // 2:
        raise DomainError(f"Eigenvalue count must be in [1, {n // 2}), got {count}")
    if l < 0:
        raise DomainError(f"Angular order l must be non-negative, got {l}")

    m, r, warp = geom.dim, geom.radius, geom.warping
    step = r / n
    t = np.linspace(0.0, r, n + 1)
    half = t[:-1] + 0.5 * step
    p_half = np.asarray(warp.h(half)) ** (m - 1)
    p_node = np.asarray(warp.h(t)) ** (m - 1)
    p_quarter_left = np.asarray(warp.h(np.maximum(t[1:-1] - 0.25 * step, 0.0))) ** (m - 1)
    p_quarter_right = np.asarray(warp.h(t[1:-1] + 0.25 * step)) ** (m - 1)

    # Simpson over each half of the control volume [t_i - Δ/2, t_i + Δ/2]
    mass_interior = (step / 12.0) * (
        p_half[:-1] + 4.0 * p_quarter_left + 2.0 * p_node[1:-1] + 4.0 * p_quarter_right + p_half[1:]
    )
    flux = p_half / step
    nu = l * (l + m - 2)

    if l == 0:
        p_origin_quarter = float(warp.h(0.25 * step)) ** (m - 1)
        mass_origin = (step / 12.0) * (p_node[0] + 4.0 * p_origin_quarter + p_half[0])
        mass = np.concatenate([[mass_origin], mass_interior])
        diag = np.concatenate([[flux[0]], flux[:-1] + flux[1:]])
        off = -flux[: n - 1]
    else:
        h_node = np.asarray(warp.h(t[1:-1]))
        mass = mass_interior
        diag = flux[:-1] + flux[1:] + nu * mass_interior / h_node ** 2
        off = -flux[1 : n - 1]

    scale = 1.0 / np.sqrt(mass)
    d = diag * scale ** 2
    e = off * scale[:-1] * scale[1:]
    values = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, count - 1))
    logger.debug(f"FD oracle (n={n}, l={l}): {values}")
    return [float(v) for v in values]
