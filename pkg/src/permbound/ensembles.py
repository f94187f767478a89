"""Seeded matrix ensembles used by the experiments and the test suite.

Kinds
-----
phase_permutation       permutation matrix times a unitary diagonal
haar_orthogonal         Haar-distributed orthogonal matrix (real)
haar_unitary            Haar-distributed unitary matrix (complex)
scaled_identity         delta * I for delta in (0, 1]
circulant               circulant matrix from a seeded Gaussian first row
perturbed_permutation   (1 - w) * phase permutation + w * Gaussian noise
row_normalized          Gaussian matrix with every row scaled to unit l2 norm

Every kind is deterministic in (kind, n, params, seed).  Passing
``params={"normalize": True}`` rescales the sample by its computed operator
norm so the result has norm 1 within roundoff.
"""

from __future__ import annotations

import enum
from typing import Mapping, Optional

import numpy as np

from .errors import ParameterError
from .linalg import operator_norm
from .matrix import Field, Matrix


class EnsembleKind(str, enum.Enum):
    PHASE_PERMUTATION = "phase_permutation"
    HAAR_ORTHOGONAL = "haar_orthogonal"
    HAAR_UNITARY = "haar_unitary"
    SCALED_IDENTITY = "scaled_identity"
    CIRCULANT = "circulant"
    PERTURBED_PERMUTATION = "perturbed_permutation"
    ROW_NORMALIZED = "row_normalized"


def _field_param(params: Mapping, default: Field) -> Field:
    raw = params.get("field", default)
    try:
        return Field(raw)
    except ValueError:
        raise ParameterError(f"unknown field {raw!r}") from None


def _haar_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    d[d == 0.0] = 1.0
    # sign correction: makes diag(R) positive, which yields Haar measure
    return q * np.sign(d)


def _haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r).copy()
    d[d == 0.0] = 1.0
    return q * (d / np.abs(d))


def _phase_permutation(rng: np.random.Generator, n: int, field: Field) -> np.ndarray:
    perm = rng.permutation(n)
    if field is Field.REAL:
        phases = rng.choice([-1.0, 1.0], size=n)
        out = np.zeros((n, n))
    else:
        phases = np.exp(2j * np.pi * rng.random(n))
        out = np.zeros((n, n), dtype=np.complex128)
    out[np.arange(n), perm] = phases
    return out


def generate(
    kind: EnsembleKind | str,
    n: int,
    seed: int,
    params: Optional[Mapping] = None,
) -> Matrix:
    """Draw one matrix from the named ensemble."""
    try:
        kind = EnsembleKind(kind)
    except ValueError:
        raise ParameterError(f"unknown ensemble kind {kind!r}") from None
    if n < 1:
        raise ParameterError("n must be at least 1")
    params = dict(params or {})
    rng = np.random.default_rng(seed)

    if kind is EnsembleKind.SCALED_IDENTITY:
        delta = params.get("delta")
        if delta is None or not 0.0 < float(delta) <= 1.0:
            raise ParameterError("scaled_identity requires delta in (0, 1]")
        field = _field_param(params, Field.REAL)
        mat = Matrix(field, float(delta) * np.eye(n))
    elif kind is EnsembleKind.PHASE_PERMUTATION:
        field = _field_param(params, Field.REAL)
        mat = Matrix(field, _phase_permutation(rng, n, field))
    elif kind is EnsembleKind.HAAR_ORTHOGONAL:
        mat = Matrix(Field.REAL, _haar_orthogonal(rng, n))
    elif kind is EnsembleKind.HAAR_UNITARY:
        mat = Matrix(Field.COMPLEX, _haar_unitary(rng, n))
    elif kind is EnsembleKind.CIRCULANT:
        field = _field_param(params, Field.REAL)
        if field is Field.REAL:
            row = rng.standard_normal(n) / np.sqrt(n)
        else:
            row = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2 * n)
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        mat = Matrix(field, row[idx])
    elif kind is EnsembleKind.PERTURBED_PERMUTATION:
        weight = float(params.get("weight", 0.1))
        if not 0.0 <= weight <= 1.0:
            raise ParameterError("perturbed_permutation requires weight in [0, 1]")
        field = _field_param(params, Field.REAL)
        base = _phase_permutation(rng, n, field)
        if field is Field.REAL:
            noise = rng.standard_normal((n, n)) / np.sqrt(n)
        else:
            noise = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)
        mat = Matrix(field, (1.0 - weight) * base + weight * noise)
    elif kind is EnsembleKind.ROW_NORMALIZED:
        field = _field_param(params, Field.REAL)
        if field is Field.REAL:
            g = rng.standard_normal((n, n))
        else:
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        norms = np.sqrt((np.abs(g) ** 2).sum(axis=1, keepdims=True))
        norms[norms == 0.0] = 1.0
        mat = Matrix(field, g / norms)
    else:  # pragma: no cover - enum is exhaustive
        raise ParameterError(f"unknown ensemble kind {kind}")

    if params.get("normalize", False):
        norm = operator_norm(mat).op_norm
        if norm == 0.0:
            raise ParameterError("cannot normalize a zero matrix")
        mat = mat.scaled(1.0 / norm)
    return mat
