"""Three independent exact permanent algorithms for small matrices.

perm(A) = sum over permutations sigma of prod_i a_{i, sigma(i)}.

* ``perm_naive``       expands the n! definition directly (oracle, n <= 10)
* ``perm_ryser``       Ryser inclusion-exclusion, O(2^n * n) (n <= 30)
* ``perm_glynn_exact`` exact average of the Glynn estimator over all 2^n
                       sign vectors (n <= 26); valid for complex matrices too
                       because the +-1 expectation kills every
                       non-permutation term

All three agree to relative 1e-9 on their overlapping range, which the test
suite enforces as the primary ground-truth check for everything else.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .errors import SizeError
from .matrix import Matrix, Scalar

NAIVE_CAP = 10
RYSER_CAP = 30
GLYNN_CAP = 26

_PERM_CHUNK = 40_320  # 8!; keeps the gather buffers small


def _as_scalar(value, mat: Matrix) -> Scalar:
    return float(value.real) if mat.is_real else complex(value)


def perm_naive(mat: Matrix, cap: int = NAIVE_CAP) -> Scalar:
    """Sum the defining n! products; the reference oracle for everything else."""
    n = mat.n
    if n > cap:
        raise SizeError(f"perm_naive supports n <= {cap}, got {n}")
    a = mat.entries
    rows = np.arange(n)
    total = a.dtype.type(0)
    perms = itertools.permutations(range(n))
    while True:
        chunk = list(itertools.islice(perms, _PERM_CHUNK))
        if not chunk:
            break
        cols = np.array(chunk, dtype=np.intp)
        total += a[rows, cols].prod(axis=1).sum()
    return _as_scalar(total, mat)


def perm_ryser(mat: Matrix, cap: int = RYSER_CAP) -> Scalar:
    n = mat.n
    if n > cap:
        raise SizeError(f"perm_ryser supports n <= {cap}, got {n}")
    return _as_scalar(_kernels.ryser_gray(mat.entries), mat)


def perm_glynn_exact(mat: Matrix, cap: int = GLYNN_CAP) -> Scalar:
    n = mat.n
    if n > cap:
        raise SizeError(f"perm_glynn_exact supports n <= {cap}, got {n}")
    return _as_scalar(_kernels.glynn_gray(mat.entries), mat)


@dataclass(frozen=True)
class PolarLog:
    """A nonzero scalar as (unit phase, natural log of modulus)."""

    phase: complex
    log_abs: float


def polar_log(value: Scalar) -> Optional[PolarLog]:
    """Log-modulus form of a permanent value; None for an exact zero.

    Composes with the log-space bound engine without underflowing for values
    like 0.5**30.
    """
    mag = abs(value)
    if mag == 0.0:
        return None
    return PolarLog(phase=complex(value) / mag, log_abs=math.log(mag))
