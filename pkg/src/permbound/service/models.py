"""Request and response models for the HTTP service.

A matrix travels as the same JSON object the file format uses:
{"field": "real"|"complex", "n": ..., "rows": [[...], ...]}, with complex
entries encoded as [re, im] pairs.  Scalars are returned as [re, im] pairs
so both fields share one wire shape.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field as PField

from ..experiments import (
    ConcentrationConfig,
    ConcentrationReportModel,
    TightnessConfig,
    TightnessReport,
    VerifyConfig,
    VerifyReport,
)

RealRow = List[float]
ComplexCell = Union[float, List[float]]


class MatrixPayload(BaseModel):
    field: Literal["real", "complex"]
    n: int
    rows: List[List[ComplexCell]]


class PermRequest(BaseModel):
    matrix: MatrixPayload


class PermResponse(BaseModel):
    n: int
    field: str
    value: List[float]  # [re, im]
    log_abs: Optional[float]  # None when perm == 0
    phase: Optional[List[float]]
    method: str
    cross_checked: bool
    cross_check_rel_err: Optional[float]
    consistent: bool


class StatsRequest(BaseModel):
    matrix: MatrixPayload
    membership_tol: float = 1e-9


class StatsResponse(BaseModel):
    n: int
    field: str
    op_norm: float
    iterations: int
    residual: float
    row_l2: List[float]
    row_linf: List[float]
    h2: float
    hinf: float
    extremal_member: bool


class EstimateRequest(BaseModel):
    matrix: MatrixPayload
    samples: int = 100_000
    seed: int = 0
    norm_bound: Optional[float] = None


class EstimateResponse(BaseModel):
    mean: List[float]  # [re, im]
    stderr: float
    samples: int
    seed: int
    max_abs_gly: float
    exceeded_norm: int
    norm_bound: float


class LogBoundModel(BaseModel):
    name: str
    log_value: float
    applicable: bool
    conditions: Dict[str, bool] = PField(default_factory=dict)
    params: Dict[str, float] = PField(default_factory=dict)


class BoundsRequest(BaseModel):
    matrix: MatrixPayload
    norm_bound: Optional[float] = None
    exact_cap: int = 16


class BoundsResponse(BaseModel):
    n: int
    field: str
    op_norm: float
    h2: float
    hinf: float
    bounds: List[LogBoundModel]
    best: Optional[str]
    log_perm_exact: Optional[float]
    slack: Optional[float]


class GenerateRequest(BaseModel):
    kind: str
    n: int
    seed: int = 0
    params: dict = PField(default_factory=dict)


class HealthResponse(BaseModel):
    status: str
    version: str


__all__ = [
    "MatrixPayload",
    "PermRequest",
    "PermResponse",
    "StatsRequest",
    "StatsResponse",
    "EstimateRequest",
    "EstimateResponse",
    "BoundsRequest",
    "BoundsResponse",
    "LogBoundModel",
    "GenerateRequest",
    "HealthResponse",
    "VerifyConfig",
    "VerifyReport",
    "ConcentrationConfig",
    "ConcentrationReportModel",
    "TightnessConfig",
    "TightnessReport",
]
