"""FastAPI application exposing the permanent toolkit.

Endpoints mirror the handler functions 1:1.  Domain errors map to HTTP 400
with a machine-readable error kind; malformed payloads are FastAPI's usual
422.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import PermboundError
from ..experiments import run_concentration, run_tightness, run_verify
from . import handlers, models


def create_app() -> FastAPI:
    app = FastAPI(title="permbound", version=__version__)

    @app.exception_handler(PermboundError)
    async def _domain_error(request: Request, exc: PermboundError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=__version__)

    @app.post("/perm", response_model=models.PermResponse)
    def perm(req: models.PermRequest) -> models.PermResponse:
        return handlers.compute_perm(req)

    @app.post("/stats", response_model=models.StatsResponse)
    def stats(req: models.StatsRequest) -> models.StatsResponse:
        return handlers.compute_stats(req)

    @app.post("/estimate", response_model=models.EstimateResponse)
    def estimate(req: models.EstimateRequest) -> models.EstimateResponse:
        return handlers.compute_estimate(req)

    @app.post("/bounds", response_model=models.BoundsResponse)
    def bounds(req: models.BoundsRequest) -> models.BoundsResponse:
        return handlers.compute_bounds(req)

    @app.post("/ensembles/generate", response_model=models.MatrixPayload)
    def ensembles_generate(req: models.GenerateRequest) -> models.MatrixPayload:
        return handlers.generate_matrix(req)

    @app.post("/experiments/verify", response_model=models.VerifyReport)
    def verify(config: models.VerifyConfig) -> models.VerifyReport:
        return run_verify(config)

    @app.post("/experiments/concentration", response_model=models.ConcentrationReportModel)
    def concentration(config: models.ConcentrationConfig) -> models.ConcentrationReportModel:
        return run_concentration(config)

    @app.post("/experiments/tightness", response_model=models.TightnessReport)
    def tightness(config: models.TightnessConfig) -> models.TightnessReport:
        return run_tightness(config)

    return app


app = create_app()
