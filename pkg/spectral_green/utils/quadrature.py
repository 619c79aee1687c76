"""
Radial Quadrature

Uniform grids on [0, r] carrying the measure dμ = ω_m h^{m-1}(t) dt:
- Composite Simpson weights (the grid size is always even)
- RadialFunction: samples of a function on a specific grid
- Weighted inner products and norms
- Cumulative integrals from 0 (and from r) at every node

Cumulative integrals use Simpson panels at even nodes; an odd node adds a
three-point quadratic rule over its last interval. Prefix sums are taken left
to right, so every result is deterministic.
"""

import math
from dataclasses import dataclass
from typing import Any, Callable, Union

import numpy as np

from spectral_green.config import validate_grid_size
from spectral_green.exceptions import DomainError, GridMismatchError

# Exact unit-sphere areas for the dimensions used most often.
_SPHERE_AREA_TABLE = {2: 2.0 * math.pi, 3: 4.0 * math.pi}


def sphere_area(m: int) -> float:
    """Area ω_m of the unit sphere S^{m-1} in R^m."""
    if isinstance(m, bool) or int(m) != m or m < 2:
        raise DomainError(f"Dimension must be an integer >= 2, got {m!r}")
    m = int(m)
    if m in _SPHERE_AREA_TABLE:
        return _SPHERE_AREA_TABLE[m]
    return 2.0 * math.pi ** (m / 2.0) / math.gamma(m / 2.0)


def simpson_weights(n: int, step: float) -> np.ndarray:
    """Composite Simpson weights for n (even) intervals of width step."""
    if n < 2 or n % 2 != 0:
        raise DomainError(f"Simpson rule needs an even number of intervals, got {n}")
    w = np.full(n + 1, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (step / 3.0)


def cumulative_integral_values(values: np.ndarray, step: float) -> np.ndarray:
    """∫_{t_0}^{t_i} y dt at every node i of a uniform grid."""
    y = np.asarray(values, dtype=float)
    n = y.size - 1
    if n < 2 or n % 2 != 0:
        raise DomainError(f"Cumulative rule needs an even number of intervals, got {n}")

    out = np.zeros_like(y)
    panels = (step / 3.0) * (y[0:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    out[2::2] = np.cumsum(panels)

    # odd nodes: even neighbour plus a quadratic over the last interval
    out[1] = (5.0 * y[0] + 8.0 * y[1] - y[2]) * step / 12.0
    if n > 2:
        odd = np.arange(3, n, 2)
        out[odd] = out[odd - 1] + (-y[odd - 2] + 8.0 * y[odd - 1] + 5.0 * y[odd]) * step / 12.0
    return out


def reverse_cumulative_integral_values(values: np.ndarray, step: float) -> np.ndarray:
    """∫_{t_i}^{t_N} y dt at every node i of a uniform grid."""
    y = np.asarray(values, dtype=float)
    return cumulative_integral_values(y[::-1], step)[::-1].copy()


# =============================================================================
# Grid and sampled functions
# =============================================================================

@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Uniform grid t_i = i·r/N with Simpson weights times ω_m h^{m-1}(t_i)."""
    warping: Any
    dim: int
    radius: float
    nodes: np.ndarray
    step: float
    sphere_area: float
    measure: np.ndarray      # ω_m h^{m-1}(t_i)
    simpson: np.ndarray      # plain Simpson weights
    weights: np.ndarray      # simpson * measure

    @classmethod
    def build(cls, warping: Any, dim: int, radius: float, n: int) -> "RadialGrid":
        n = validate_grid_size(n)
        if not radius > 0.0:
            raise DomainError(f"Grid radius must be positive, got {radius}")
        omega = sphere_area(dim)
        nodes = np.linspace(0.0, float(radius), n + 1)
        step = float(radius) / n

        h = np.asarray(warping.h(nodes), dtype=float)
        measure = omega * h ** (dim - 1)
        measure[0] = 0.0
        simpson = simpson_weights(n, step)
        return cls(
            warping=warping,
            dim=int(dim),
            radius=float(radius),
            nodes=nodes,
            step=step,
            sphere_area=omega,
            measure=measure,
            simpson=simpson,
            weights=simpson * measure,
        )

    @property
    def size(self) -> int:
        """Number of intervals N."""
        return self.nodes.size - 1

    @property
    def volume(self) -> float:
        return float(np.sum(self.weights))

    def is_compatible(self, other: "RadialGrid") -> bool:
        if other is self:
            return True
        return (
            other.warping is self.warping
            and other.dim == self.dim
            and other.size == self.size
            and other.radius == self.radius
        )

    def function(self, values: Union[np.ndarray, float]) -> "RadialFunction":
        arr = np.broadcast_to(np.asarray(values, dtype=float), self.nodes.shape).copy()
        return RadialFunction(self, arr)

    def sample(self, fn: Callable[[np.ndarray], np.ndarray]) -> "RadialFunction":
        return self.function(fn(self.nodes))

    def ones(self) -> "RadialFunction":
        return self.function(1.0)

    def zeros(self) -> "RadialFunction":
        return self.function(0.0)


@dataclass(frozen=True, eq=False)
class RadialFunction:
    """Samples f(t_i) on a RadialGrid; the unit of all operator arithmetic."""
    grid: RadialGrid
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != self.grid.nodes.shape:
            raise GridMismatchError(
                f"Expected {self.grid.nodes.size} samples, got {self.values.shape}"
            )

    def _other_values(self, other) -> Union[np.ndarray, float]:
        if isinstance(other, RadialFunction):
            check_same_grid(self, other)
            return other.values
        return other

    def __add__(self, other) -> "RadialFunction":
        return RadialFunction(self.grid, self.values + self._other_values(other))

    def __sub__(self, other) -> "RadialFunction":
        return RadialFunction(self.grid, self.values - self._other_values(other))

    def __mul__(self, other) -> "RadialFunction":
        return RadialFunction(self.grid, self.values * self._other_values(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "RadialFunction":
        return RadialFunction(self.grid, self.values / scalar)

    def __neg__(self) -> "RadialFunction":
        return RadialFunction(self.grid, -self.values)

    def copy(self) -> "RadialFunction":
        return RadialFunction(self.grid, self.values.copy())


def check_same_grid(f: RadialFunction, g: RadialFunction) -> None:
    if not f.grid.is_compatible(g.grid):
        raise GridMismatchError(
            f"Grid mismatch: N={f.grid.size}, r={f.grid.radius} vs N={g.grid.size}, r={g.grid.radius}"
        )


# =============================================================================
# Weighted functionals
# =============================================================================

def weighted_inner(f: RadialFunction, g: RadialFunction) -> float:
    """∫ f g dμ by composite Simpson."""
    check_same_grid(f, g)
    return float(np.sum(f.grid.weights * f.values * g.values))


def weighted_norm(f: RadialFunction) -> float:
    return math.sqrt(max(weighted_inner(f, f), 0.0))


def weighted_integral(f: RadialFunction) -> float:
    """∫ f dμ."""
    return float(np.sum(f.grid.weights * f.values))


def cumulative_integral(f: RadialFunction, weighted: bool = False) -> RadialFunction:
    """
    F(t_i) = ∫_0^{t_i} f(s) ds, or ∫_0^{t_i} f dμ when weighted.

    F(t_0) = 0 and F(t_N) equals the full Simpson integral.
    """
    integrand = f.values * f.grid.measure if weighted else f.values
    return RadialFunction(f.grid, cumulative_integral_values(integrand, f.grid.step))
