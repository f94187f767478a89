"""Matrix file I/O.

JSON schema (both fields):

    {"field": "real" | "complex", "n": 3, "rows": [[...], ...]}

where a real entry is a plain number and a complex entry is a two-element
array [re, im].  A bare CSV grid of numbers is accepted as an alternative
for real matrices.  Serialization uses shortest round-trip decimals, so
write followed by read reproduces the matrix bit for bit.
"""

from __future__ import annotations

import json
import os
from typing import Union

import numpy as np

from .errors import MatrixFormatError
from .matrix import Field, Matrix


def matrix_to_payload(mat: Matrix) -> dict:
    if mat.is_real:
        rows = [[float(v) for v in row] for row in mat.entries]
    else:
        rows = [[[float(v.real), float(v.imag)] for v in row] for row in mat.entries]
    return {"field": mat.field.value, "n": mat.n, "rows": rows}


def payload_to_matrix(payload: dict) -> Matrix:
    if not isinstance(payload, dict):
        raise MatrixFormatError("matrix payload must be a JSON object")
    try:
        field = Field(payload["field"])
        n = payload["n"]
        rows = payload["rows"]
    except (KeyError, ValueError, TypeError) as exc:
        raise MatrixFormatError(f"bad matrix payload: {exc}") from exc
    if not isinstance(n, int) or n < 1:
        raise MatrixFormatError(f"n must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n:
        raise MatrixFormatError(f"expected {n} rows, got {len(rows) if isinstance(rows, list) else type(rows).__name__}")
    if any(not isinstance(row, list) or len(row) != n for row in rows):
        raise MatrixFormatError("rows must all have length n")
    try:
        if field is Field.REAL:
            entries = np.array(rows, dtype=np.float64)
        else:
            entries = np.empty((n, n), dtype=np.complex128)
            for i, row in enumerate(rows):
                for j, cell in enumerate(row):
                    if isinstance(cell, (int, float)):
                        entries[i, j] = float(cell)
                    elif isinstance(cell, (list, tuple)) and len(cell) == 2:
                        entries[i, j] = complex(float(cell[0]), float(cell[1]))
                    else:
                        raise MatrixFormatError(
                            f"complex entry must be a number or [re, im], got {cell!r}"
                        )
    except (TypeError, ValueError) as exc:
        raise MatrixFormatError(f"non-numeric matrix entry: {exc}") from exc
    try:
        return Matrix(field, entries)
    except Exception as exc:
        raise MatrixFormatError(str(exc)) from exc


def _parse_csv(text: str) -> Matrix:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        try:
            rows.append([float(cell) for cell in line.split(",")])
        except ValueError as exc:
            raise MatrixFormatError(f"bad CSV cell: {exc}") from exc
    if not rows:
        raise MatrixFormatError("empty CSV matrix")
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise MatrixFormatError("CSV grid is not square")
    return Matrix(Field.REAL, np.array(rows))


def loads_matrix(text: str) -> Matrix:
    """Parse matrix text, trying JSON first and falling back to CSV."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"invalid JSON: {exc}") from exc
        return payload_to_matrix(payload)
    return _parse_csv(text)


def load_matrix(path: Union[str, os.PathLike]) -> Matrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    return loads_matrix(text)


def dumps_matrix(mat: Matrix, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(matrix_to_payload(mat), sort_keys=True) + "\n"
    if fmt == "csv":
        if not mat.is_real:
            raise MatrixFormatError("CSV output supports real matrices only")
        return "\n".join(",".join(repr(float(v)) for v in row) for row in mat.entries) + "\n"
    raise MatrixFormatError(f"unknown matrix format {fmt!r}")


def save_matrix(mat: Matrix, path: Union[str, os.PathLike], fmt: str = None) -> None:
    if fmt is None:
        fmt = "csv" if str(path).endswith(".csv") else "json"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_matrix(mat, fmt))
