"""Service operations: pydantic request in, pydantic response out.

These functions hold no HTTP concerns; the FastAPI routes wrap them 1:1 and
the local client calls them directly.  Domain errors propagate as package
exceptions and are translated at each boundary.
"""

from __future__ import annotations

import math
from typing import Optional

from .. import exact
from ..bounds import bound_report
from ..ensembles import generate
from ..errors import MatrixFormatError
from ..linalg import is_phase_permutation, operator_norm, row_stats
from ..matio import matrix_to_payload, payload_to_matrix
from ..matrix import Matrix
from ..sampling import estimate_perm
from . import models

CROSS_CHECK_TOL = 1e-9


def _matrix(payload: models.MatrixPayload) -> Matrix:
    return payload_to_matrix(payload.model_dump())


def _pair(value) -> list:
    z = complex(value)
    return [z.real, z.imag]


def compute_perm(req: models.PermRequest) -> models.PermResponse:
    """Exact permanent via Ryser, cross-checked by the Glynn enumeration."""
    mat = _matrix(req.matrix)
    value = exact.perm_ryser(mat)
    cross_checked = mat.n <= exact.GLYNN_CAP
    rel_err: Optional[float] = None
    consistent = True
    if cross_checked:
        other = exact.perm_glynn_exact(mat)
        scale = max(abs(value), abs(other))
        rel_err = abs(complex(value) - complex(other)) / scale if scale > 0.0 else 0.0
        consistent = rel_err <= CROSS_CHECK_TOL
    polar = exact.polar_log(value)
    return models.PermResponse(
        n=mat.n,
        field=mat.field.value,
        value=_pair(value),
        log_abs=None if polar is None else polar.log_abs,
        phase=None if polar is None else _pair(polar.phase),
        method="ryser",
        cross_checked=cross_checked,
        cross_check_rel_err=rel_err,
        consistent=consistent,
    )


def compute_stats(req: models.StatsRequest) -> models.StatsResponse:
    mat = _matrix(req.matrix)
    spec = operator_norm(mat)
    stats = row_stats(mat)
    return models.StatsResponse(
        n=mat.n,
        field=mat.field.value,
        op_norm=spec.op_norm,
        iterations=spec.iterations,
        residual=spec.residual,
        row_l2=[float(v) for v in stats.row_l2],
        row_linf=[float(v) for v in stats.row_linf],
        h2=stats.h2,
        hinf=stats.hinf,
        extremal_member=is_phase_permutation(mat, req.membership_tol),
    )


def compute_estimate(req: models.EstimateRequest) -> models.EstimateResponse:
    mat = _matrix(req.matrix)
    report = estimate_perm(mat, req.samples, req.seed, norm_bound=req.norm_bound)
    return models.EstimateResponse(
        mean=_pair(report.mean),
        stderr=report.stderr,
        samples=report.samples,
        seed=report.seed,
        max_abs_gly=report.max_abs_gly,
        exceeded_norm=report.exceeded_norm,
        norm_bound=report.norm_bound,
    )


def compute_bounds(req: models.BoundsRequest) -> models.BoundsResponse:
    mat = _matrix(req.matrix)
    report = bound_report(mat, norm_bound=req.norm_bound, exact_cap=req.exact_cap)
    return models.BoundsResponse(
        n=report.n,
        field=report.field.value,
        op_norm=report.op_norm,
        h2=report.h2,
        hinf=report.hinf,
        bounds=[
            models.LogBoundModel(
                name=b.name,
                log_value=b.log_value,
                applicable=b.applicable,
                conditions=b.conditions,
                params={k: float(v) for k, v in b.params.items()},
            )
            for b in report.bounds
        ],
        best=report.best,
        log_perm_exact=report.log_perm_exact,
        slack=report.slack,
    )


def generate_matrix(req: models.GenerateRequest) -> models.MatrixPayload:
    mat = generate(req.kind, req.n, seed=req.seed, params=req.params)
    return models.MatrixPayload(**matrix_to_payload(mat))
