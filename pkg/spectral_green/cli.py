"""
spectral_green command line

Subcommands:
- spectrum: radial or l-spectrum eigenvalues (power iteration + deflation)
- series:   harmonic identity, l-series / Hilbert-Schmidt, whole-spectrum Σ1/λ²
- momentum: exit-time moment hierarchy, λ1 / λ2 from moments
- bounds:   extrinsic-ball bounds from volume or number of ends
- complete: stochastic completeness heuristic

Exit codes: 0 success, 2 flag/domain errors, 3 non-converged numerics.
Stdout carries only the JSON or CSV document; logs and diagnostics go to stderr.
"""

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence, TextIO

from pydantic import ValidationError

from spectral_green import __version__
from spectral_green.config import load_config_file
from spectral_green.exceptions import ConsistencyError, DomainError, SpectralGreenError
from spectral_green.models.spectral_models import JobSpec
from spectral_green.orchestrator import JobResult, normalize_floats, run_job
from spectral_green.utils.log_config import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_CONVERGED = 3

# argparse destinations that are not JobSpec fields
_CLI_ONLY_KEYS = {"config", "log_json", "verbose"}


class UsageError(DomainError):
    """Invalid command-line usage."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    geometry = common.add_argument_group("geometry")
    geometry.add_argument("--family", choices=["euclidean", "hyperbolic", "spherical", "cubicexp", "custom"])
    geometry.add_argument("--curvature", type=float, help="κ for hyperbolic/spherical (default 1)")
    geometry.add_argument("--h-table", dest="h_table", help="CSV with header t,h (family custom)")
    geometry.add_argument("--dim", type=int, help="Dimension m >= 2")
    geometry.add_argument("--radius", type=float, help="Ball radius r")

    numeric = common.add_argument_group("numerics")
    numeric.add_argument("--grid", type=int, help="Grid intervals N (default 4096 or $SPECTRAL_GREEN_GRID)")
    numeric.add_argument("--tol", type=float, help="Power iteration tolerance (default 1e-10)")
    numeric.add_argument("--max-iter", dest="max_iter", type=int, help="Iteration cap (default 500)")
    numeric.add_argument("--workers", type=int, help="Threads for independent l solves")

    io_group = common.add_argument_group("output")
    io_group.add_argument("--output", choices=["json", "csv"])
    io_group.add_argument("--config", help="key=value file with default flag values")
    io_group.add_argument("--log-json", dest="log_json", action="store_true", default=None)
    io_group.add_argument("--verbose", "-v", action="store_true", default=None)

    parser = _Parser(prog="spectral_green", description="Dirichlet spectra of geodesic balls via Green operators")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", parents=[common], help="Eigenvalues of the ball")
    sp.add_argument("--l", type=int, help="Angular order (Euclidean only for l > 0)")
    sp.add_argument("--count", type=int, help="Number of eigenvalues")
    sp.add_argument("--table", action="store_const", const=True, default=None, help="Append the 𝒯^j ratio table")

    se = sub.add_parser("series", parents=[common], help="Series identities")
    se.add_argument("--mode", choices=["harmonic", "hs", "whole"])
    se.add_argument("--multiplicity", choices=["paper", "sphere", "none"])
    se.add_argument("--lmax", type=int)
    se.add_argument("--imax", type=int)
    se.add_argument("--count", type=int, help="Eigenvalues used in partial sums")
    se.add_argument("--l", type=int, help="Angular order for --mode hs")

    mo = sub.add_parser("momentum", parents=[common], help="Exit-time moment hierarchy")
    mo.add_argument("--k-max", dest="k_max", type=int, help="Hierarchy depth K (default 40)")

    bo = sub.add_parser("bounds", parents=[common], help="Extrinsic-ball bounds on Σ1/λ²")
    bo.add_argument("--volume", type=float)
    bo.add_argument("--ends", type=float)

    sub.add_parser("complete", parents=[common], help="Stochastic completeness heuristic")
    return parser


def build_job_spec(ns: argparse.Namespace) -> JobSpec:
    """Merge defaults < --config file < explicit flags into a JobSpec."""
    values: Dict[str, Any] = {}
    if ns.config:
        file_values = load_config_file(ns.config)
        unknown = sorted(set(file_values) - set(JobSpec.model_fields) - _CLI_ONLY_KEYS)
        if unknown:
            raise UsageError(f"Unknown config keys in {ns.config}: {', '.join(unknown)}")
        values.update({k: v for k, v in file_values.items() if k not in _CLI_ONLY_KEYS})

    for key, value in vars(ns).items():
        if key in _CLI_ONLY_KEYS or value is None:
            continue
        values[key] = value
    return JobSpec(**values)


# ============================================================================
# Rendering
# ============================================================================

def render_json(doc: Dict[str, Any]) -> str:
    return json.dumps(normalize_floats(doc), indent=2, ensure_ascii=False) + "\n"


def _csv_cell(value: Any) -> Any:
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, (list, dict)):
        return json.dumps(normalize_floats(value), ensure_ascii=False)
    return value


def render_csv(doc: Dict[str, Any]) -> str:
    """One row per result item, or a single row of scalar results; header always present."""
    results = doc["results"]
    items = results.get("items")
    if isinstance(items, list) and items and all(isinstance(i, dict) for i in items):
        rows: List[Dict[str, Any]] = items
    else:
        rows = [{k: v for k, v in results.items() if not isinstance(v, (list, dict))}]

    fieldnames: List[str] = []
    for row in rows:
        fieldnames += [k for k in row if k not in fieldnames]

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in row.items()})
    return buf.getvalue()


# ============================================================================
# Entry points
# ============================================================================

def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    try:
        ns = build_parser().parse_args(list(argv) if argv is not None else None)
        configure_logging(logging.DEBUG if ns.verbose else logging.WARNING, True if ns.log_json else None)
        spec = build_job_spec(ns)
        result: JobResult = run_job(spec)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(p) for p in first.get("loc", ())) or "input"
        print(f"error: {location}: {first.get('msg', 'invalid value')}", file=stderr)
        return EXIT_USAGE
    except ConsistencyError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_NOT_CONVERGED
    except SpectralGreenError as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE

    doc = result.document()
    stdout.write(render_csv(doc) if spec.output == "csv" else render_json(doc))
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
