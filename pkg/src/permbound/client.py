"""Clients the CLI talks through.

``LocalClient`` invokes the service handlers in process, so the CLI works
with no server running.  ``RemoteClient`` speaks the same request/response
models over HTTP to a ``permbound serve`` instance.  Both raise
RemoteServiceError (or the original package exception, locally) so callers
see one error surface.
"""

from __future__ import annotations

from typing import Union

import httpx
from pydantic import BaseModel

from .errors import PermboundError
from .experiments import (
    ConcentrationConfig,
    ConcentrationReportModel,
    TightnessConfig,
    TightnessReport,
    VerifyConfig,
    VerifyReport,
    run_concentration,
    run_tightness,
    run_verify,
)
from .service import handlers, models


class RemoteServiceError(PermboundError):
    def __init__(self, status_code: int, detail: str):
        super().__init__(f"service returned {status_code}: {detail}")
        self.status_code = status_code
        self.detail = detail


class LocalClient:
    def perm(self, req: models.PermRequest) -> models.PermResponse:
        return handlers.compute_perm(req)

    def stats(self, req: models.StatsRequest) -> models.StatsResponse:
        return handlers.compute_stats(req)

    def estimate(self, req: models.EstimateRequest) -> models.EstimateResponse:
        return handlers.compute_estimate(req)

    def bounds(self, req: models.BoundsRequest) -> models.BoundsResponse:
        return handlers.compute_bounds(req)

    def verify(self, config: VerifyConfig) -> VerifyReport:
        return run_verify(config)

    def concentration(self, config: ConcentrationConfig) -> ConcentrationReportModel:
        return run_concentration(config)

    def tightness(self, config: TightnessConfig) -> TightnessReport:
        return run_tightness(config)


class RemoteClient:
    def __init__(self, base_url: str, timeout: float = 600.0, transport=None):
        self._http = httpx.Client(base_url=base_url, timeout=timeout, transport=transport)

    def _post(self, path: str, body: BaseModel, response_model):
        resp = self._http.post(path, json=body.model_dump(mode="json"))
        if resp.status_code != 200:
            try:
                detail = resp.json().get("detail", resp.text)
            except ValueError:
                detail = resp.text
            raise RemoteServiceError(resp.status_code, str(detail))
        return response_model.model_validate(resp.json())

    def perm(self, req: models.PermRequest) -> models.PermResponse:
        return self._post("/perm", req, models.PermResponse)

    def stats(self, req: models.StatsRequest) -> models.StatsResponse:
        return self._post("/stats", req, models.StatsResponse)

    def estimate(self, req: models.EstimateRequest) -> models.EstimateResponse:
        return self._post("/estimate", req, models.EstimateResponse)

    def bounds(self, req: models.BoundsRequest) -> models.BoundsResponse:
        return self._post("/bounds", req, models.BoundsResponse)

    def verify(self, config: VerifyConfig) -> VerifyReport:
        return self._post("/experiments/verify", config, VerifyReport)

    def concentration(self, config: ConcentrationConfig) -> ConcentrationReportModel:
        return self._post("/experiments/concentration", config, ConcentrationReportModel)

    def tightness(self, config: TightnessConfig) -> TightnessReport:
        return self._post("/experiments/tightness", config, TightnessReport)


Client = Union[LocalClient, RemoteClient]


def make_client(server: str | None = None) -> Client:
    return RemoteClient(server) if server else LocalClient()
