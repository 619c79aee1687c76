"""
spectral_green Orchestrator

Dispatches a JobSpec to the services and assembles the result document
    {"command", "config", "results", "warnings"}
shared by the CLI and the HTTP API. Flag combinations are validated before
any computation starts.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List

from spectral_green.exceptions import DomainError
from spectral_green.geometry.ball import BallGeometry, vs_integral
from spectral_green.geometry.completeness import stochastic_diagnostic
from spectral_green.geometry.warping import WarpingFamily, WarpingFunction
from spectral_green.models.spectral_models import (
    BoundsInput,
    EigenPair,
    JobSpec,
    SeriesKind,
    SolveConfig,
)
from spectral_green.operators.green import EuclidKernelL, green_hs_norm_sq, green_trace
from spectral_green.services.bounds import cly_lower_bound, extrinsic_bounds
from spectral_green.services.eigensolve import (
    assemble_spectrum,
    convergence_table,
    l_spectrum_euclid,
    radial_spectrum,
)
from spectral_green.services.momentum import (
    lambda1_from_moments,
    lambda2_bound_from_moments,
    mean_exit_time,
    momentum_spectral_expansion,
    solve_hierarchy,
    torsional_rigidity,
)
from spectral_green.services.series import (
    l_series_report,
    lower_bound_cor22,
    radial_harmonic_identity,
    radial_lower_bound,
    whole_spectrum_sum_sq,
)

logger = logging.getLogger(__name__)

EXPANSION_PAIRS = 3


@dataclass
class JobResult:
    command: str
    config: Dict[str, Any]
    results: Dict[str, Any]
    warnings: List[str] = field(default_factory=list)
    converged: bool = True

    def document(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "warnings": self.warnings,
        }


# ============================================================================
# Validation
# ============================================================================

def validate_job(spec: JobSpec) -> None:
    """Reject inconsistent flag combinations before computing anything."""
    family = spec.family.strip().lower()
    euclidean = family == WarpingFamily.EUCLIDEAN.value

    if family == WarpingFamily.TABULATED.value and not spec.h_table:
        raise DomainError("--family custom requires --h-table")
    if spec.h_table and family != WarpingFamily.TABULATED.value:
        raise DomainError("--h-table is only valid with --family custom")

    if spec.command == "spectrum" and spec.l > 0 and not euclidean:
        raise DomainError("Angular orders l > 0 are only available on Euclidean balls")
    if spec.command == "spectrum" and spec.table and spec.l > 0:
        raise DomainError("--table is only available for radial spectra (l = 0)")
    if spec.command == "series" and spec.mode in (SeriesKind.HS, SeriesKind.WHOLE) and not euclidean:
        raise DomainError(f"Series mode '{spec.mode.value}' needs --family euclidean")
    if spec.command == "momentum" and spec.k_max < 5:
        raise DomainError(f"momentum needs --k-max >= 5, got {spec.k_max}")
    if spec.command == "bounds" and (spec.volume is None) == (spec.ends is None):
        raise DomainError("bounds needs exactly one of --volume or --ends")


def build_geometry(spec: JobSpec) -> BallGeometry:
    warp = WarpingFunction.from_name(spec.family, spec.curvature, spec.h_table)
    return BallGeometry(spec.dim, spec.radius, warp)


def _pair_items(pairs: List[EigenPair], bound: Callable[[int], float]) -> List[Dict[str, Any]]:
    items = []
    for k, pair in enumerate(pairs, start=1):
        item = pair.summary(k)
        item["lower_bound"] = bound(k)
        items.append(item)
    return items


def _convergence_warnings(pairs: List[EigenPair], label: str) -> List[str]:
    return [
        f"{label} eigenvalue {k} not converged after {p.iterations} iterations"
        for k, p in enumerate(pairs, start=1)
        if not p.converged
    ]


# ============================================================================
# Commands
# ============================================================================

def _run_spectrum(spec: JobSpec, cfg: SolveConfig, out: JobResult) -> None:
    if spec.l > 0:
        pairs = l_spectrum_euclid(spec.dim, spec.radius, spec.l, spec.count, cfg)
        items = _pair_items(pairs, lambda k: lower_bound_cor22(spec.dim, spec.radius, spec.l, k))
    else:
        geom = build_geometry(spec)
        pairs = radial_spectrum(geom, spec.count, cfg)
        items = _pair_items(pairs, lambda k: radial_lower_bound(geom, k))

    out.results = {"l": spec.l, "eigenvalues": [p.eigenvalue for p in pairs], "items": items}
    if spec.table:
        table = convergence_table(build_geometry(spec), spec.count, config=cfg)
        out.results["table"] = table.model_dump(mode="json")

    out.warnings += _convergence_warnings(pairs, f"l={spec.l}")
    out.converged = all(p.converged for p in pairs)


def _run_series(spec: JobSpec, cfg: SolveConfig, out: JobResult) -> None:
    if spec.mode == SeriesKind.HARMONIC:
        report = radial_harmonic_identity(build_geometry(spec), spec.count, cfg)
        out.results = report.model_dump(mode="json")
    elif spec.mode == SeriesKind.HS:
        report = l_series_report(spec.dim, spec.radius, spec.l, spec.count, 2, cfg)
        kernel = EuclidKernelL(spec.l, spec.dim, spec.radius, cfg.grid_size)
        out.results = report.model_dump(mode="json")
        out.results["l"] = spec.l
        out.results["trace"] = green_trace(kernel)
        out.results["hs_norm_sq"] = green_hs_norm_sq(kernel)
    else:
        report = whole_spectrum_sum_sq(spec.dim, spec.radius, spec.multiplicity, spec.lmax)
        out.results = report.model_dump(mode="json")
        out.results["multiplicity"] = spec.multiplicity.value
        if spec.imax is not None:
            assembled = assemble_spectrum(
                spec.dim, spec.radius, spec.lmax, spec.imax, spec.multiplicity, cfg, spec.workers
            )
            out.results["assembled"] = {
                "partial_sum_sq": assembled.partial_sum_sq,
                "tail_within_l_max": assembled.tail_within_l_max,
                "tail_beyond_l_max": assembled.tail_beyond_l_max,
                "items": [e.model_dump(mode="json") for e in assembled.entries],
            }
            if not assembled.converged:
                out.warnings.append("assembled spectrum contains non-converged eigenvalues")
                out.converged = False

    out.warnings += report.notes
    if not report.converged:
        out.warnings.append(f"{report.kind.value} series used non-converged eigenvalues")
        out.converged = False


def _run_momentum(spec: JobSpec, cfg: SolveConfig, out: JobResult) -> None:
    geom = build_geometry(spec)
    seq = solve_hierarchy(geom, spec.k_max, cfg)
    lam1 = lambda1_from_moments(seq)
    pairs = radial_spectrum(geom, EXPANSION_PAIRS, cfg)
    lam2 = lambda2_bound_from_moments(seq, pairs[0].eigenvalue)
    expansion = momentum_spectral_expansion(seq, pairs)
    exit_time = mean_exit_time(geom, cfg)

    out.results = {
        "k_max": spec.k_max,
        "lambda1_moments": lam1.value,
        "lambda1_monotone": lam1.monotone,
        "lambda1_ratios": lam1.ratios,
        "lambda2_bound": lam2.value,
        "lambda2_order": lam2.k_used,
        "lambda2_denominator": lam2.scaled_denominator,
        "lambda2_reliable": lam2.reliable,
        "eigenvalues": [p.eigenvalue for p in pairs],
        "torsional_rigidity": torsional_rigidity(seq),
        "max_exit_time": float(exit_time.values[0]),
        "vs_integral": vs_integral(geom, n=cfg.grid_size),
        "expansion_max_discrepancy": expansion.max_discrepancy,
    }
    if not lam1.monotone:
        out.warnings.append("moment ratios B_{k-1}/B_k are not monotone")
    if not lam2.reliable:
        out.warnings.append("λ2 bound from moments is unreliable (cancellation)")
    out.warnings += _convergence_warnings(pairs, "radial")
    out.converged = all(p.converged for p in pairs)


def _run_bounds(spec: JobSpec, cfg: SolveConfig, out: JobResult) -> None:
    report = extrinsic_bounds(BoundsInput(m=spec.dim, r=spec.radius, volume=spec.volume, ends=spec.ends))
    out.results = report.model_dump(mode="json")
    if spec.volume is not None:
        out.results["cly_lambda1"] = cly_lower_bound(spec.dim, spec.volume, 1)
    out.warnings += report.notes


def _run_complete(spec: JobSpec, cfg: SolveConfig, out: JobResult) -> None:
    warp = WarpingFunction.from_name(spec.family, spec.curvature, spec.h_table)
    report = stochastic_diagnostic(warp, spec.dim)
    out.results = report.model_dump(mode="json")
    if report.verdict.value == "inconclusive":
        out.warnings.append("completeness heuristic is inconclusive")


_COMMANDS: Dict[str, Callable[[JobSpec, SolveConfig, JobResult], None]] = {
    "spectrum": _run_spectrum,
    "series": _run_series,
    "momentum": _run_momentum,
    "bounds": _run_bounds,
    "complete": _run_complete,
}


def run_job(spec: JobSpec) -> JobResult:
    """
    Validate and execute one job.

    Args:
        spec: Command plus its parameters, from the CLI or the HTTP body

    Returns:
        JobResult whose document() is what the CLI prints and the API returns
    """
    validate_job(spec)
    cfg = spec.solve_config()

    config: Dict[str, Any] = {"family": spec.family, "dim": spec.dim, "radius": spec.radius}
    if spec.family in (WarpingFamily.HYPERBOLIC.value, WarpingFamily.SPHERICAL.value):
        config["curvature"] = spec.curvature
    if spec.h_table:
        config["h_table"] = spec.h_table
    config.update(cfg.describe())

    out = JobResult(command=spec.command, config=config, results={})
    logger.info(f"Running {spec.command} job ({spec.family}, m={spec.dim}, r={spec.radius:g})")
    _COMMANDS[spec.command](spec, cfg, out)

    if not out.converged:
        logger.warning(f"⚠️ {spec.command} job finished with non-converged results")
    return out


def normalize_floats(value: Any) -> Any:
    """Round floats to 12 significant digits; non-finite floats become None."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: normalize_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [normalize_floats(v) for v in value]
    return value
