"""Dense square matrices tagged with their scalar field.

Real matrices are stored as float64 and complex ones as complex128, so a
real-field matrix has imaginary parts that are exactly zero by construction.
All instances are immutable after validation; every operation in the package
treats them as values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ParameterError

Scalar = Union[float, complex]


class Field(str, enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


_DTYPES = {Field.REAL: np.float64, Field.COMPLEX: np.complex128}


@dataclass(frozen=True)
class Matrix:
    field: Field
    entries: np.ndarray

    def __post_init__(self) -> None:
        field = Field(self.field)
        raw = np.asarray(self.entries)
        if field is Field.REAL and np.iscomplexobj(raw):
            if np.any(raw.imag != 0.0):
                raise ParameterError("real-field matrix has nonzero imaginary parts")
            raw = raw.real
        arr = np.array(raw, dtype=_DTYPES[field])
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise ParameterError(f"matrix must be square with n >= 1, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ParameterError("matrix entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def is_real(self) -> bool:
        return self.field is Field.REAL

    def as_complex(self) -> np.ndarray:
        """Entries viewed as complex128 regardless of field."""
        return np.asarray(self.entries, dtype=np.complex128)

    def scaled(self, alpha: Scalar) -> "Matrix":
        """Return alpha * A, promoting to the complex field when alpha is."""
        if self.is_real and not isinstance(alpha, complex):
            return Matrix(Field.REAL, self.entries * float(alpha))
        return Matrix(Field.COMPLEX, self.as_complex() * complex(alpha))


def real_matrix(entries) -> Matrix:
    return Matrix(Field.REAL, entries)


def complex_matrix(entries) -> Matrix:
    return Matrix(Field.COMPLEX, entries)


def identity(n: int, field: Field = Field.REAL) -> Matrix:
    return Matrix(field, np.eye(n))
