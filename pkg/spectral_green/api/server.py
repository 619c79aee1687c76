"""
FastAPI server for spectral_green

Endpoints (v1):
- GET  /health                  # Liveness check
- POST /api/v1/{command}        # spectrum | series | momentum | bounds | complete

The request body is a JobRequest (a JobSpec without `command`, which is taken
from the path); the response is the same document the CLI prints as JSON.
"""

import logging

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import ValidationError

from spectral_green import __version__
from spectral_green.exceptions import ConsistencyError, SpectralGreenError
from spectral_green.models.spectral_models import JobRequest, JobSpec
from spectral_green.orchestrator import normalize_floats, run_job

logger = logging.getLogger(__name__)

COMMANDS = ("spectrum", "series", "momentum", "bounds", "complete")

app = FastAPI(
    title="spectral_green API",
    description="Dirichlet spectra, series identities and exit-time moments of geodesic balls",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/health")
def health_check():
    return {"status": "healthy", "service": "spectral_green", "version": __version__}


# ============================================================================
# Jobs
# ============================================================================

@app.post("/api/v1/{command}")
def run_command(command: str, body: JobRequest):
    """
    Run one job. Numerical work is CPU bound, so the endpoint is a plain
    (threadpool) handler.

    Args:
        command: spectrum | series | momentum | bounds | complete
        body: Job parameters; the command itself comes from the path

    Returns:
        The CLI JSON document plus a top-level "converged" flag. Non-converged
        results are returned with status 200 and a warning entry.
    """
    if command not in COMMANDS:
        raise HTTPException(status_code=404, detail=f"Unknown command '{command}'")

    try:
        spec = JobSpec(command=command, **body.model_dump(exclude_unset=True))
    except ValidationError as e:
        raise HTTPException(status_code=422, detail=e.errors(include_url=False, include_context=False))

    try:
        result = run_job(spec)
    except ConsistencyError as e:
        logger.error(f"❌ Consistency check failed for {command}: {e}")
        raise HTTPException(status_code=500, detail=f"Consistency check failed: {e}")
    except SpectralGreenError as e:
        logger.warning(f"⚠️ {command} rejected: {e}")
        raise HTTPException(status_code=400, detail=str(e))

    doc = normalize_floats(result.document())
    doc["converged"] = result.converged
    return doc
