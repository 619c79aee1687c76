import math

import numpy as np
import pytest

from spectral_green.exceptions import DomainError, GridMismatchError
from spectral_green.geometry.warping import WarpingFunction
from spectral_green.utils.quadrature import (
    RadialGrid,
    cumulative_integral,
    cumulative_integral_values,
    reverse_cumulative_integral_values,
    simpson_weights,
    sphere_area,
    weighted_inner,
    weighted_integral,
    weighted_norm,
)


def _grid(n=256, dim=2, radius=1.0, warp=None):
    return RadialGrid.build(warp or WarpingFunction.euclidean(), dim, radius, n)


def test_sphere_area_known_dimensions():
    assert sphere_area(2) == pytest.approx(2 * math.pi, rel=1e-15)
    assert sphere_area(3) == pytest.approx(4 * math.pi, rel=1e-15)
    assert sphere_area(4) == pytest.approx(2 * math.pi ** 2, rel=1e-14)
    assert sphere_area(5) == pytest.approx(8 * math.pi ** 2 / 3, rel=1e-14)


@pytest.mark.parametrize("m", [1, 0, 2.5])
def test_sphere_area_rejects_bad_dimension(m):
    with pytest.raises(DomainError):
        sphere_area(m)


def test_simpson_weights_pattern_and_total():
    w = simpson_weights(8, 0.5)
    assert w[0] == pytest.approx(0.5 / 3)
    assert w[1] == pytest.approx(2.0 / 3)
    assert w[2] == pytest.approx(1.0 / 3)
    assert w.sum() == pytest.approx(4.0, rel=1e-15)


def test_simpson_weights_odd_intervals_rejected():
    with pytest.raises(DomainError):
        simpson_weights(7, 0.1)


def test_simpson_exact_for_cubics():
    t = np.linspace(0.0, 2.0, 11)
    w = simpson_weights(10, 0.2)
    assert float(np.sum(w * (t ** 3 - t + 1))) == pytest.approx(4.0 - 2.0 + 2.0, rel=1e-13)


def test_cumulative_integral_exact_for_quadratics_at_every_node():
    t = np.linspace(0.0, 1.0, 65)
    values = 3 * t ** 2 + 2 * t + 1
    out = cumulative_integral_values(values, t[1] - t[0])
    np.testing.assert_allclose(out, t ** 3 + t ** 2 + t, atol=1e-14)


def test_reverse_cumulative_integral_of_linear():
    t = np.linspace(0.0, 1.0, 65)
    out = reverse_cumulative_integral_values(t, t[1] - t[0])
    np.testing.assert_allclose(out, (1 - t ** 2) / 2, atol=1e-14)
    assert out[-1] == 0.0


def test_cumulative_integral_of_smooth_function_is_fourth_order():
    errors = []
    for n in (64, 128):
        t = np.linspace(0.0, 1.0, n + 1)
        out = cumulative_integral_values(np.cos(t), 1.0 / n)
        errors.append(np.max(np.abs(out - np.sin(t))))
    assert errors[0] / errors[1] > 8


def test_grid_measure_and_volume():
    grid = _grid(n=128, dim=3)
    assert grid.size == 128
    assert grid.measure[0] == 0.0
    np.testing.assert_allclose(grid.measure, 4 * math.pi * grid.nodes ** 2, rtol=1e-14)
    assert grid.volume == pytest.approx(4 * math.pi / 3, rel=1e-13)


def test_grid_rejects_bad_size():
    with pytest.raises(DomainError):
        _grid(n=63)
    with pytest.raises(DomainError):
        _grid(n=32)


def test_weighted_functionals_on_the_disk():
    grid = _grid(n=256)
    one = grid.ones()
    t = grid.sample(lambda x: x)
    assert weighted_integral(one) == pytest.approx(math.pi, rel=1e-13)
    assert weighted_norm(one) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert weighted_inner(t, t) == pytest.approx(math.pi / 2, rel=1e-13)


def test_cumulative_integral_weighted_gives_volume():
    grid = _grid(n=256)
    v = cumulative_integral(grid.ones(), weighted=True)
    np.testing.assert_allclose(v.values, math.pi * grid.nodes ** 2, atol=1e-13)


def test_radial_function_arithmetic():
    grid = _grid(n=64)
    f = grid.sample(lambda x: x)
    g = 2.0 * f - f / 2.0 + grid.ones()
    np.testing.assert_allclose(g.values, 1.5 * grid.nodes + 1.0)
    np.testing.assert_allclose((-f).values, -grid.nodes)
    np.testing.assert_allclose((f * f).values, grid.nodes ** 2)


def test_mixing_grids_raises():
    a = _grid(n=64)
    b = _grid(n=128)
    with pytest.raises(GridMismatchError):
        a.ones() + b.ones()
    with pytest.raises(GridMismatchError):
        weighted_inner(a.ones(), b.ones())
