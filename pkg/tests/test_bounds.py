import math

import pytest
from pydantic import ValidationError
from scipy.special import zeta

from spectral_green.exceptions import DomainError
from spectral_green.models.spectral_models import BoundsInput, MultiplicityMode
from spectral_green.services.bounds import (
    a_constant,
    b_constant,
    cly_lower_bound,
    ends_bounds,
    extrinsic_bounds,
    thm_mark_bounds,
    zeta_eval,
)
from spectral_green.services.series import whole_spectrum_sum_sq


@pytest.mark.parametrize("s", [4 / 3, 2.0, 3.0, 4.0])
def test_zeta_matches_scipy(s):
    assert zeta_eval(s) == pytest.approx(float(zeta(s)), rel=1e-10)


def test_zeta_known_values():
    assert zeta_eval(2.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-12)
    assert zeta_eval(4.0) == pytest.approx(math.pi ** 4 / 90, rel=1e-12)


@pytest.mark.parametrize("s", [1.0, 0.5, -2.0])
def test_zeta_needs_s_above_one(s):
    with pytest.raises(DomainError):
        zeta_eval(s)


def test_constants():
    assert a_constant(2) == pytest.approx(1 / 48, rel=1e-14)
    assert a_constant(3) == pytest.approx(8 / 1260, rel=1e-14)
    assert b_constant(2) == pytest.approx(math.e ** 2 / (16 * math.pi ** 2), rel=1e-14)
    with pytest.raises(DomainError):
        a_constant(4)


def test_flat_disk_bounds():
    report = thm_mark_bounds(BoundsInput(m=2, r=1.0, volume=math.pi))
    assert report.lower == pytest.approx(1 / 48, rel=1e-12)
    assert report.upper == pytest.approx(math.e ** 2 * math.pi ** 2 / 96, rel=1e-9)
    assert report.unit_ball_volume == pytest.approx(math.pi)
    assert report.zeta_value == pytest.approx(math.pi ** 2 / 6, rel=1e-12)
    assert not report.notes


def test_flat_ball_upper_bound_in_three_dimensions():
    report = thm_mark_bounds(BoundsInput(m=3, r=1.0, volume=4 * math.pi / 3))
    assert report.lower == pytest.approx(8 / 1260, rel=1e-12)
    assert report.upper == pytest.approx(0.584, abs=1e-3)


@pytest.mark.parametrize(
    "m, volume",
    [(2, math.pi), (3, 4 * math.pi / 3)],
)
def test_bounds_bracket_the_flat_ball_spectrum(m, volume):
    report = thm_mark_bounds(BoundsInput(m=m, r=1.0, volume=volume))
    exact = whole_spectrum_sum_sq(m, 1.0, MultiplicityMode.SPHERE).closed_form
    assert report.lower <= exact <= report.upper


@pytest.mark.parametrize("m", [2, 3])
def test_doubling_volume_scales_bounds(m):
    base = thm_mark_bounds(BoundsInput(m=m, r=1.0, volume=10.0))
    doubled = thm_mark_bounds(BoundsInput(m=m, r=1.0, volume=20.0))
    assert doubled.lower == pytest.approx(base.lower / 2, rel=1e-12)
    assert doubled.upper == pytest.approx(base.upper * 2 ** (4 / m), rel=1e-12)


def test_volume_below_flat_ball_adds_note():
    report = thm_mark_bounds(BoundsInput(m=2, r=1.0, volume=1.0))
    assert report.notes
    assert report.lower < report.upper


def test_bounds_reject_high_dimension_and_bad_input():
    with pytest.raises(DomainError):
        thm_mark_bounds(BoundsInput(m=4, r=1.0, volume=10.0))
    with pytest.raises(ValidationError):
        BoundsInput(m=2, r=1.0, volume=-1.0)


def test_ends_bounds():
    three = ends_bounds(3, 1.0, 1.0)
    assert three.lower == pytest.approx(8 / 1260, rel=1e-12)
    two = ends_bounds(2, 1.0, 1.0)
    flat = thm_mark_bounds(BoundsInput(m=2, r=1.0, volume=math.pi))
    assert two.lower == pytest.approx(flat.lower, rel=1e-12)
    assert two.upper == pytest.approx(flat.upper, rel=1e-12)
    assert ends_bounds(3, 1.0, 2.0).lower == pytest.approx(three.lower / 2, rel=1e-12)
    with pytest.raises(DomainError):
        ends_bounds(3, 1.0, 0.5)


def test_cly_lower_bound():
    assert cly_lower_bound(2, math.pi, 1) == pytest.approx(4 / math.e, rel=1e-14)
    expected = 4 * math.pi * math.exp(-2 / 3) / (4 * math.pi / 3) ** (2 / 3)
    assert cly_lower_bound(3, 4 * math.pi / 3, 1) == pytest.approx(expected, rel=1e-14)
    values = [cly_lower_bound(3, 2.0, k) for k in range(1, 6)]
    assert values == sorted(values)
    with pytest.raises(DomainError):
        cly_lower_bound(2, math.pi, 0)


def test_bounds_input_needs_volume_or_ends():
    with pytest.raises(ValidationError):
        BoundsInput(m=3, r=1.0)
    with pytest.raises(ValidationError):
        BoundsInput(m=3, r=1.0, ends=0.0)


def test_extrinsic_bounds_from_ends():
    report = extrinsic_bounds(BoundsInput(m=3, r=1.0, ends=1.0))
    assert report.lower == pytest.approx(8 / 1260, rel=1e-12)
    assert report.upper == pytest.approx(ends_bounds(3, 1.0, 1.0).upper, rel=1e-14)


def test_extrinsic_bounds_prefer_volume():
    data = BoundsInput(m=2, r=1.0, volume=10.0, ends=3.0)
    assert extrinsic_bounds(data) == thm_mark_bounds(data)


def test_volume_bounds_need_a_volume():
    with pytest.raises(DomainError):
        thm_mark_bounds(BoundsInput(m=3, r=1.0, ends=2.0))
