"""
Green Operators of Geodesic Balls

Radial Dirichlet problem on B_r in a model manifold:
    T(f)(t) = ∫_t^r ds / h^{m-1}(s) ∫_0^s h^{m-1}(σ) f(σ) dσ
solves L_0 u = -f with u'(0) = 0, u(r) = 0, where
L_l = d²/dt² + (m-1) h'/h d/dt - l(l+m-2)/h².

Euclidean balls, angular order l: G_l solves L_l u = -f, u(r) = 0, through
the kernel g_l(x, y) = φ(min)ψ(max) with φ(s) = s^l and
ψ(s) = s^l (s^{-β} - r^{-β}) / (β ω_m), β = 2l + m - 2 (log form when β = 0).
The radial kernel has the same product structure with φ ≡ 1 and
ψ(s) = ∫_s^r dt/S(t). Trace and Hilbert-Schmidt norm are evaluated on that
structure with nested cumulative integrals, so no dense kernel matrix is built.
"""

import logging
import math
from typing import Optional, Union

import numpy as np
from scipy.integrate import quad

from spectral_green.exceptions import ConsistencyError, DomainError, GridMismatchError
from spectral_green.geometry.ball import BallGeometry, vs_integral
from spectral_green.geometry.warping import WarpingFamily, WarpingFunction
from spectral_green.utils.quadrature import (
    RadialFunction,
    RadialGrid,
    cumulative_integral_values,
    reverse_cumulative_integral_values,
)

logger = logging.getLogger(__name__)

TRACE_CHECK_TOL = 1e-8


def _separable_psi(s: np.ndarray, l: int, beta: int, r: float, omega: float) -> np.ndarray:
    """s^l (s^{-β} - r^{-β}) / (β ω), or log(r/s) / ω when β = 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if beta == 0:
            return np.log(r / s) / omega
        return s ** l * (s ** (-beta) - r ** (-beta)) / (beta * omega)


def _check_grid_for(geom: BallGeometry, f: RadialFunction) -> None:
    grid = f.grid
    if grid.warping is not geom.warping or grid.dim != geom.dim or grid.radius != geom.radius:
        raise GridMismatchError(
            f"Function sampled on (m={grid.dim}, r={grid.radius}) but geometry is (m={geom.dim}, r={geom.radius})"
        )


# =============================================================================
# Radial operator T
# =============================================================================

def apply_t(geom: BallGeometry, f: RadialFunction) -> RadialFunction:
    """Apply the radial Green operator T; the result vanishes at t = r."""
    _check_grid_for(geom, f)
    grid = f.grid
    inner = cumulative_integral_values(grid.measure * f.values, grid.step)

    quotient = np.zeros_like(inner)
    quotient[1:] = inner[1:] / grid.measure[1:]

    out = reverse_cumulative_integral_values(quotient, grid.step)
    out[-1] = 0.0
    return RadialFunction(grid, out)


class RadialGreenKernel:
    """Kernel of T on a ball of a model manifold: g(x, y) = ∫_{max(x,y)}^r dt/S(t)."""

    def __init__(self, geom: BallGeometry, grid_size: Optional[int] = None):
        self.geom = geom
        self.grid: RadialGrid = geom.grid(grid_size)

    def __call__(self, x: float, y: float) -> float:
        s = max(float(x), float(y))
        if s < 0 or s > self.geom.radius:
            raise DomainError(f"Kernel evaluated outside [0, {self.geom.radius}]: ({x}, {y})")
        if s == 0.0:
            return math.inf
        omega, m, warp = self.geom.sphere_area, self.geom.dim, self.geom.warping
        value, _ = quad(lambda t: 1.0 / (omega * warp.h(t) ** (m - 1)), s, self.geom.radius, limit=200)
        return value

    def phi_values(self) -> np.ndarray:
        return np.ones_like(self.grid.nodes)

    def psi_values(self) -> np.ndarray:
        grid = self.grid
        x, m = grid.nodes, grid.dim
        with np.errstate(divide="ignore", invalid="ignore"):
            # 1/S - 1/(ω t^{m-1}) stays bounded at the origin
            remainder = 1.0 / grid.measure - 1.0 / (grid.sphere_area * x ** (m - 1))
            remainder[0] = 0.0
            psi = _separable_psi(x, 0, m - 2, grid.radius, grid.sphere_area)
            psi = psi + reverse_cumulative_integral_values(remainder, grid.step)
        psi[0] = math.inf
        return psi

    def apply(self, f: RadialFunction) -> RadialFunction:
        return apply_t(self.geom, f)

    def describe(self) -> dict:
        return {"kernel": "radial", **self.geom.describe(), "grid": self.grid.size}


# =============================================================================
# Euclidean operator G_l
# =============================================================================

class EuclidKernelL:
    """Green kernel of L_l on the Euclidean ball of radius r in R^m."""

    def __init__(self, l: int, m: int, r: float, grid_size: Optional[int] = None):
        if isinstance(l, bool) or int(l) != l or l < 0:
            raise DomainError(f"Angular order l must be a non-negative integer, got {l!r}")
        self.l = int(l)
        self.geom = BallGeometry(m, r, WarpingFunction.euclidean())
        self.m = self.geom.dim
        self.r = self.geom.radius
        self.alpha = self.l + self.m - 1
        self.beta = 2 * self.l + self.m - 2
        self.grid: RadialGrid = self.geom.grid(grid_size)

    def _psi(self, s: np.ndarray) -> np.ndarray:
        return _separable_psi(s, self.l, self.beta, self.r, self.geom.sphere_area)

    def __call__(self, x: float, y: float) -> float:
        lo, hi = sorted((float(x), float(y)))
        if lo < 0 or hi > self.r:
            raise DomainError(f"Kernel evaluated outside [0, {self.r}]: ({x}, {y})")
        if hi == 0.0:
            return math.inf if self.l == 0 else 0.0
        return float(lo ** self.l * self._psi(np.asarray(hi)))

    def phi_values(self) -> np.ndarray:
        return self.grid.nodes ** self.l

    def psi_values(self) -> np.ndarray:
        psi = self._psi(self.grid.nodes)
        psi[0] = math.inf
        return psi

    def apply(self, f: RadialFunction) -> RadialFunction:
        return apply_green_l(self.l, self.m, self.r, f)

    def describe(self) -> dict:
        return {"kernel": "euclid_l", "l": self.l, "dim": self.m, "radius": self.r, "grid": self.grid.size}


def apply_green_l(l: int, m: int, r: float, f: RadialFunction) -> RadialFunction:
    """
    Apply G_l on the Euclidean ball by the three-term split
        β G_l f(x) = x^{l-β} ∫_0^x y^α f + x^l ∫_x^r y^{α-β} f - x^l r^{-β} ∫_0^r y^α f
    with α = l + m - 1 (log form when β = 0).
    """
    grid = f.grid
    if grid.warping.family != WarpingFamily.EUCLIDEAN or grid.dim != m or grid.radius != float(r):
        raise GridMismatchError(f"G_l needs a Euclidean grid with m={m}, r={r}")
    if l < 0:
        raise DomainError(f"Angular order l must be non-negative, got {l}")

    x, y, step = grid.nodes, f.values, grid.step
    alpha, beta = l + m - 1, 2 * l + m - 2

    with np.errstate(divide="ignore", invalid="ignore"):
        if beta == 0:
            log_ratio = np.log(r / x)
            inner = cumulative_integral_values(x * y, step)
            # y log(r/y) f(0) is integrated exactly: ∫_x^r = r²/4 - x²/4 - (x²/2) log(r/x)
            outer_integrand = x * log_ratio * (y - y[0])
            outer_integrand[0] = 0.0
            exact = r ** 2 / 4.0 - x ** 2 / 4.0 - 0.5 * x ** 2 * log_ratio
            exact[0] = r ** 2 / 4.0
            out = log_ratio * inner
            out[0] = 0.0
            out = out + reverse_cumulative_integral_values(outer_integrand, step) + y[0] * exact
        else:
            inner = cumulative_integral_values(x ** alpha * y, step)
            low = x ** (alpha - beta) * y
            if l >= 2:
                low[0] = 0.0
            outer = reverse_cumulative_integral_values(low, step)

            near = x ** (l - beta) * inner
            near[0] = 0.0
            x_l = x ** l
            out = (near + x_l * outer - x_l * inner[-1] / r ** beta) / beta

    out[-1] = 0.0
    return RadialFunction(grid, out)


# =============================================================================
# Trace and Hilbert-Schmidt norm
# =============================================================================

GreenKernel = Union[RadialGreenKernel, EuclidKernelL]


def _as_kernel(kernel: Union[GreenKernel, BallGeometry]) -> GreenKernel:
    if isinstance(kernel, BallGeometry):
        return RadialGreenKernel(kernel)
    return kernel


def green_trace(kernel: Union[GreenKernel, BallGeometry]) -> float:
    """
    ∫ g(x, x) dμ(x).

    For the radial kernel the trace is checked against ∫_0^r V/S.

    Args:
        kernel: RadialGreenKernel, EuclidKernelL, or a BallGeometry (radial kernel)

    Returns:
        The trace, equal to Σ 1/λ over the kernel's spectrum

    Raises:
        ConsistencyError: radial trace and ∫V/S differ by more than TRACE_CHECK_TOL
    """
    kernel = _as_kernel(kernel)
    grid = kernel.grid
    with np.errstate(invalid="ignore"):
        diagonal = kernel.phi_values() * kernel.psi_values()
    diagonal[0] = 0.0
    integrand = grid.measure * diagonal

    if grid.dim == 2 and kernel.phi_values()[0] != 0.0:
        # g(x, x) dμ ~ x log(r/x) near the origin; integrate that part exactly
        x, r = grid.nodes, grid.radius
        with np.errstate(divide="ignore", invalid="ignore"):
            singular = x * np.log(r / x)
        singular[0] = 0.0
        trace = r ** 2 / 4.0 + float(np.sum(grid.simpson * (integrand - singular)))
    else:
        trace = float(np.sum(grid.simpson * integrand))

    if isinstance(kernel, RadialGreenKernel):
        expected = vs_integral(kernel.geom, n=grid.size)
        mismatch = abs(trace - expected) / max(abs(expected), 1e-300)
        if mismatch > TRACE_CHECK_TOL:
            logger.error(f"❌ Green trace {trace:.12g} differs from ∫V/S {expected:.12g} (relative {mismatch:.2e})")
            raise ConsistencyError(
                f"Green trace {trace:.15g} disagrees with ∫V/S {expected:.15g} (relative {mismatch:.2e} > {TRACE_CHECK_TOL:.0e})"
            )
    return trace


def green_hs_norm_sq(kernel: Union[GreenKernel, BallGeometry]) -> float:
    """
    ∬ g(x, y)² dμ dμ over the ball.

    Uses the product structure instead of a double Simpson rule over the
    x ≤ y triangle: ∬ g² = 2 ∫ ψ(x)² [∫_0^x φ² dμ] dμ(x), one cumulative
    integral followed by one Simpson sum.

    Args:
        kernel: RadialGreenKernel, EuclidKernelL, or a BallGeometry (radial kernel)

    Returns:
        Squared Hilbert-Schmidt norm, equal to Σ 1/λ² over the kernel's spectrum
    """
    kernel = _as_kernel(kernel)
    grid = kernel.grid
    phi_sq_mass = cumulative_integral_values(kernel.phi_values() ** 2 * grid.measure, grid.step)
    with np.errstate(invalid="ignore"):
        integrand = kernel.psi_values() ** 2 * phi_sq_mass
    integrand[0] = 0.0
    return 2.0 * float(np.sum(grid.weights * integrand))


# =============================================================================
# Finite-difference L_l (verification)
# =============================================================================

def apply_l_operator(u: RadialFunction, l: int = 0) -> RadialFunction:
    """
    Three-point finite differences of L_l u = u'' + (m-1)h'/h u' - l(l+m-2)u/h².

    Only interior nodes are computed; both endpoints are left as 0.
    """
    grid = u.grid
    t, step, m, v = grid.nodes, grid.step, grid.dim, u.values
    du = (v[2:] - v[:-2]) / (2.0 * step)
    d2u = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / step ** 2

    out = np.zeros_like(t)
    h = np.asarray(grid.warping.h(t[1:-1]))
    hp = np.asarray(grid.warping.h_prime(t[1:-1]))
    out[1:-1] = d2u + (m - 1) * hp / h * du - l * (l + m - 2) * v[1:-1] / h ** 2
    return RadialFunction(grid, out)
