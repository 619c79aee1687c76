"""
Services Package

- Eigensolver: power iteration with deflation, assembled spectra, ratio tables
- Finite-difference oracle for cross-checks
- Series identities and multiplicities
- Exit-time moment hierarchy
- Extrinsic-ball bounds and ζ evaluation
"""

from .eigensolve import (
    assemble_spectrum,
    convergence_table,
    deflate,
    l_spectrum_euclid,
    power_iterate,
    radial_spectrum,
)
from .fd_oracle import finite_difference_spectrum
from .series import (
    delta_multiplicity,
    euclid_sum_l,
    l_series_report,
    lower_bound_cor22,
    radial_harmonic_identity,
    radial_lower_bound,
    whole_spectrum_sum_sq,
)
from .momentum import (
    lambda1_from_moments,
    lambda2_bound_from_moments,
    mean_exit_time,
    momentum_spectral_expansion,
    solve_hierarchy,
    torsional_rigidity,
)
from .bounds import cly_lower_bound, ends_bounds, extrinsic_bounds, thm_mark_bounds, zeta_eval

__all__ = [
    # Eigensolver
    "power_iterate",
    "deflate",
    "radial_spectrum",
    "l_spectrum_euclid",
    "assemble_spectrum",
    "convergence_table",
    "finite_difference_spectrum",
    # Series
    "radial_harmonic_identity",
    "euclid_sum_l",
    "delta_multiplicity",
    "whole_spectrum_sum_sq",
    "l_series_report",
    "lower_bound_cor22",
    "radial_lower_bound",
    # Moments
    "solve_hierarchy",
    "lambda1_from_moments",
    "lambda2_bound_from_moments",
    "momentum_spectral_expansion",
    "mean_exit_time",
    "torsional_rigidity",
    # Bounds
    "thm_mark_bounds",
    "ends_bounds",
    "extrinsic_bounds",
    "cly_lower_bound",
    "zeta_eval",
]
