import math

import numpy as np
import pytest

from spectral_green.exceptions import ConsistencyError, DomainError, GridMismatchError
from spectral_green.geometry.ball import BallGeometry, vs_integral
from spectral_green.geometry.warping import WarpingFunction
from spectral_green.operators.green import (
    EuclidKernelL,
    RadialGreenKernel,
    apply_green_l,
    apply_l_operator,
    apply_t,
    green_hs_norm_sq,
    green_trace,
)
from spectral_green.services.series import euclid_sum_l
from spectral_green.utils.quadrature import weighted_inner


# =============================================================================
# Radial operator T
# =============================================================================

def test_t_of_one_on_the_disk_is_the_exit_time(disk):
    grid = disk.grid(4096)
    u = apply_t(disk, grid.ones())
    np.testing.assert_allclose(u.values, (1 - grid.nodes ** 2) / 4, atol=1e-12)
    assert u.values[0] == pytest.approx(vs_integral(disk), rel=1e-12)


def test_t_vanishes_on_the_boundary(hyperbolic_disk):
    grid = hyperbolic_disk.grid(256)
    u = apply_t(hyperbolic_disk, grid.sample(np.cos))
    assert u.values[-1] == 0.0


def test_t_inverts_minus_l(hyperbolic_disk):
    grid = hyperbolic_disk.grid(4096)
    f = grid.sample(np.cos)
    residual = apply_l_operator(apply_t(hyperbolic_disk, f)) + f
    interior = (grid.nodes > 0.1) & (grid.nodes < 0.9)
    assert np.max(np.abs(residual.values[interior])) <= 1e-3


def test_t_inversion_error_shrinks_with_refinement(hyperbolic_disk):
    errors = []
    for n in (256, 512):
        grid = hyperbolic_disk.grid(n)
        f = grid.sample(np.cos)
        residual = apply_l_operator(apply_t(hyperbolic_disk, f)) + f
        interior = (grid.nodes > 0.1) & (grid.nodes < 0.9)
        errors.append(np.max(np.abs(residual.values[interior])))
    assert errors[0] / errors[1] >= 3.5


@pytest.mark.parametrize(
    "warp",
    [WarpingFunction.euclidean(), WarpingFunction.hyperbolic(), WarpingFunction.spherical(), WarpingFunction.cubic_exp()],
    ids=["euclidean", "hyperbolic", "spherical", "cubicexp"],
)
@pytest.mark.parametrize("m", [2, 3])
def test_t_is_self_adjoint(warp, m):
    geom = BallGeometry(m, 1.0, warp)
    grid = geom.grid(4096)
    f = grid.sample(lambda t: 1 + t ** 2)
    g = grid.sample(lambda t: 2 - t + t ** 3)
    left = weighted_inner(apply_t(geom, f), g)
    right = weighted_inner(f, apply_t(geom, g))
    assert left == pytest.approx(right, rel=1e-9)


@pytest.mark.parametrize("m", [2, 3])
def test_t_preserves_positivity(m):
    geom = BallGeometry(m, 1.0, WarpingFunction.hyperbolic())
    grid = geom.grid(512)
    u = apply_t(geom, grid.sample(lambda t: t ** 2 * (1 + np.sin(5 * t))))
    assert np.all(u.values[:-1] > 0.0)


def test_t_rejects_functions_from_another_ball(disk, ball3):
    with pytest.raises(GridMismatchError):
        apply_t(disk, ball3.grid(64).ones())


# =============================================================================
# Kernels
# =============================================================================

def test_radial_kernel_symmetric_and_decreasing(hyperbolic_disk):
    g = RadialGreenKernel(hyperbolic_disk, 256)
    assert g(0.3, 0.7) == g(0.7, 0.3)
    assert g(0.2, 0.5) > g(0.2, 0.6) > 0.0
    assert g(1.0, 0.4) == pytest.approx(0.0, abs=1e-15)
    assert math.isinf(g(0.0, 0.0))
    with pytest.raises(DomainError):
        g(0.5, 1.5)


def test_radial_kernel_on_the_disk_is_logarithmic(disk):
    g = RadialGreenKernel(disk, 256)
    assert g(0.1, 0.5) == pytest.approx(math.log(2.0) / (2 * math.pi), rel=1e-10)


def test_euclid_kernel_l_pointwise():
    g = EuclidKernelL(1, 2, 1.0, 256)
    # x^l · y^l (y^{-β} - r^{-β}) / (β ω) with β = 2
    assert g(0.25, 0.5) == pytest.approx(0.25 * 0.5 * (4.0 - 1.0) / (2 * 2 * math.pi), rel=1e-14)
    assert g(0.5, 0.25) == g(0.25, 0.5)
    assert g(0.0, 0.0) == 0.0
    assert math.isinf(EuclidKernelL(0, 3, 1.0, 256)(0.0, 0.0))


def test_euclid_kernel_rejects_negative_order():
    with pytest.raises(DomainError):
        EuclidKernelL(-1, 2, 1.0, 64)


# =============================================================================
# G_l
# =============================================================================

def test_green_l_closed_form_for_l_one():
    kernel = EuclidKernelL(1, 2, 1.0, 4096)
    x = kernel.grid.nodes
    u = apply_green_l(1, 2, 1.0, kernel.grid.sample(lambda t: t))
    np.testing.assert_allclose(u.values, (x - x ** 3) / 8, atol=1e-10)


@pytest.mark.parametrize("m", [2, 3])
def test_green_zero_matches_radial_t(m):
    kernel = EuclidKernelL(0, m, 1.0, 4096)
    f = kernel.grid.sample(lambda t: 1 + t)
    via_l = apply_green_l(0, m, 1.0, f)
    via_t = apply_t(kernel.geom, f)
    np.testing.assert_allclose(via_l.values, via_t.values, atol=1e-9)


@pytest.mark.parametrize("l", [0, 1, 2])
def test_green_l_is_self_adjoint(l):
    kernel = EuclidKernelL(l, 3, 1.0, 4096)
    f = kernel.grid.sample(lambda t: t ** l * (1 + t))
    g = kernel.grid.sample(lambda t: t ** l * np.cos(t))
    left = weighted_inner(kernel.apply(f), g)
    right = weighted_inner(f, kernel.apply(g))
    assert left == pytest.approx(right, rel=1e-9)


def test_green_l_vanishes_on_boundary():
    kernel = EuclidKernelL(2, 2, 1.5, 256)
    u = kernel.apply(kernel.grid.sample(lambda t: t ** 2))
    assert u.values[-1] == 0.0
    assert u.values[0] == 0.0


def test_green_l_needs_euclidean_grid(hyperbolic_disk):
    with pytest.raises(GridMismatchError):
        apply_green_l(0, 2, 1.0, hyperbolic_disk.grid(64).ones())


# =============================================================================
# Trace and Hilbert-Schmidt norm
# =============================================================================

def test_trace_of_radial_disk_kernel(disk):
    assert green_trace(disk) == pytest.approx(0.25, rel=1e-12)


@pytest.mark.parametrize(
    "warp",
    [WarpingFunction.euclidean(), WarpingFunction.hyperbolic(), WarpingFunction.spherical(), WarpingFunction.cubic_exp()],
    ids=["euclidean", "hyperbolic", "spherical", "cubicexp"],
)
@pytest.mark.parametrize("m", [2, 3])
def test_trace_of_radial_kernel_is_vs_integral(warp, m):
    geom = BallGeometry(m, 1.0, warp)
    assert green_trace(geom) == pytest.approx(vs_integral(geom), rel=1e-8)


def test_trace_check_passes_for_smooth_models(hyperbolic_disk):
    trace = green_trace(RadialGreenKernel(hyperbolic_disk, 4096))
    assert trace == pytest.approx(vs_integral(hyperbolic_disk), rel=1e-8)


def test_trace_mismatch_raises(hyperbolic_disk, monkeypatch):
    monkeypatch.setattr("spectral_green.operators.green.vs_integral", lambda geom, n=None: 1.0)
    with pytest.raises(ConsistencyError):
        green_trace(RadialGreenKernel(hyperbolic_disk, 512))


def test_trace_mismatch_does_not_apply_to_euclid_kernels(monkeypatch):
    monkeypatch.setattr("spectral_green.operators.green.vs_integral", lambda geom, n=None: 1.0)
    assert green_trace(EuclidKernelL(1, 2, 1.0, 4096)) == pytest.approx(euclid_sum_l(2, 1.0, 1, 1), rel=1e-8)


@pytest.mark.parametrize("l", [0, 1, 2, 3])
@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("r", [1.0, 2.0])
def test_trace_of_euclid_kernel(l, m, r):
    kernel = EuclidKernelL(l, m, r, 4096)
    assert green_trace(kernel) == pytest.approx(euclid_sum_l(m, r, l, 1), rel=1e-8)


@pytest.mark.parametrize("l", [0, 1, 2, 3])
@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("r", [1.0, 2.0])
def test_hs_norm_of_euclid_kernel(l, m, r):
    kernel = EuclidKernelL(l, m, r, 4096)
    assert green_hs_norm_sq(kernel) == pytest.approx(euclid_sum_l(m, r, l, 2), rel=1e-6)


def test_hs_norm_of_radial_disk_kernel(disk):
    assert green_hs_norm_sq(disk) == pytest.approx(1.0 / 32.0, rel=1e-6)


def test_spherical_cap_trace():
    cap = BallGeometry(2, 1.0, WarpingFunction.spherical())
    assert green_trace(cap) == pytest.approx(-2 * math.log(math.cos(0.5)), rel=1e-8)
