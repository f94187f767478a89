"""Big-row/small-row partitioning of real matrices with norm at most 1.

A row is "big" when it contains an entry of absolute value at least
1 - lambda.  Because every row and column of a norm-<=-1 matrix has l2 norm
at most 1, such entries necessarily occupy distinct rows and columns, so row
and column permutations plus a +-1 column diagonal bring the matrix to the
stacked form (B over L) where B holds the b big rows, its (i, i) entries are
positive and at least 1 - lambda, and every other entry of the matrix has
absolute value below 1 - lambda.

None of these transformations change the operator norm, |perm|, the row sup
norms, or t = 1 - hinf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from . import rng
from .constants import LAMBDA_REAL
from .errors import FieldError, ParameterError, StructuralError
from .linalg import operator_norm, row_stats
from .matrix import Matrix


@dataclass(frozen=True)
class PartitionResult:
    lam: float
    b: int
    l: int
    big: np.ndarray  # (b, n) block, diagonal entries positive and >= 1 - lam
    small: np.ndarray  # (l, n) block
    row_perm: np.ndarray
    col_perm: np.ndarray
    sign_diag: np.ndarray  # +-1 per column, applied after the permutations
    t_param: float  # 1 - hinf of the source matrix


@dataclass(frozen=True)
class PartitionTailStats:
    """Empirical frequencies of the three block-level deviation events."""

    small_exceed_freq: float  # ||LX||_1 >= mu_small + eps * n
    sign_disagreement_freq: float  # ||BX||_1 != <X, B~X>, i.e. some X_i (BX)_i < 0
    quad_exceed_freq: float  # <X, B~X> >= mu_big + eps * n
    samples: int
    seed: int


def partition_rows(mat: Matrix, lam: float) -> PartitionResult:
    """Split a real matrix with operator norm <= 1 at the 1 - lam threshold."""
    if not mat.is_real:
        raise FieldError("row partitioning is defined for real matrices only")
    if not 0.0 < lam < 0.1:
        raise ParameterError("lambda must lie in (0, 0.1)")

    a = mat.entries
    n = mat.n
    moduli = np.abs(a)
    big_mask = moduli >= 1.0 - lam
    if (big_mask.sum(axis=1) > 1).any() or (big_mask.sum(axis=0) > 1).any():
        raise StructuralError("multiple near-maximal entries share a row or column")
    op = operator_norm(mat).op_norm
    if op > 1.0 + 1e-8:
        raise ParameterError(f"operator norm {op} exceeds 1; rescale first")

    big_rows = np.flatnonzero(big_mask.any(axis=1))
    small_rows = np.flatnonzero(~big_mask.any(axis=1))
    b = len(big_rows)
    row_perm = np.concatenate([big_rows, small_rows]).astype(np.intp)

    big_cols = np.array(
        [int(np.flatnonzero(big_mask[r])[0]) for r in big_rows], dtype=np.intp
    )
    rest = np.setdiff1d(np.arange(n), big_cols, assume_unique=False)
    col_perm = np.concatenate([big_cols, rest]).astype(np.intp)

    rearranged = a[row_perm][:, col_perm]
    sign_diag = np.ones(n)
    for i in range(b):
        if rearranged[i, i] < 0.0:
            sign_diag[i] = -1.0
    final = rearranged * sign_diag

    stats = row_stats(mat)
    return PartitionResult(
        lam=float(lam),
        b=b,
        l=n - b,
        big=final[:b],
        small=final[b:],
        row_perm=row_perm,
        col_perm=col_perm,
        sign_diag=sign_diag,
        t_param=1.0 - stats.hinf,
    )


def mu_tilde_split(part: PartitionResult) -> Tuple[float, float]:
    """Row-wise mean proxies (mu_big, mu_small) for the two blocks.

    Each row contributes sqrt(2/pi) + (1 - sqrt(2/pi)) * ||row||_inf, an
    upper bound for E|<row, X>| over sign vectors.  Their total satisfies
    (mu_small + mu_big) / n = 1 - (1 - sqrt(2/pi)) * t exactly.
    """
    c = 1.0 - LAMBDA_REAL
    mu_big = float(LAMBDA_REAL * part.b + c * np.abs(part.big).max(axis=1).sum()) if part.b else 0.0
    mu_small = float(LAMBDA_REAL * part.l + c * np.abs(part.small).max(axis=1).sum()) if part.l else 0.0
    return mu_big, mu_small


def partition_tail_stats(
    part: PartitionResult,
    epsilon: float,
    samples: int,
    seed: int,
) -> PartitionTailStats:
    """Measure the three block deviation events over sign-vector draws.

    Sign agreement is tested as X_i * (BX)_i >= 0 for all i <= b, with ties
    counting as agreement, because the underlying event is X_i Y_i < 0.
    """
    if samples < 1:
        raise ParameterError("samples must be at least 1")
    if epsilon < 0:
        raise ParameterError("epsilon must be nonnegative")
    n = part.big.shape[1] if part.b else part.small.shape[1]
    mu_big, mu_small = mu_tilde_split(part)
    small_hits = 0
    sign_hits = 0
    quad_hits = 0
    for _, block in rng.sign_blocks(seed, n, samples):
        if part.l:
            lx = np.abs(block @ part.small.T).sum(axis=1)
            small_hits += int((lx >= mu_small + epsilon * n).sum())
        if part.b:
            bx = block @ part.big.T  # (samples, b)
            pairwise = block[:, : part.b] * bx
            sign_hits += int((pairwise < 0.0).any(axis=1).sum())
            quad = pairwise.sum(axis=1)
            quad_hits += int((quad >= mu_big + epsilon * n).sum())
    return PartitionTailStats(
        small_exceed_freq=small_hits / samples,
        sign_disagreement_freq=sign_hits / samples,
        quad_exceed_freq=quad_hits / samples,
        samples=samples,
        seed=seed,
    )


def quadratic_form_diag(part: PartitionResult, samples: int, seed: int) -> float:
    """Frequency of ||BX||_1 != <X, B~X> over sign-vector draws."""
    if part.b == 0:
        return 0.0
    return partition_tail_stats(part, 0.0, samples, seed).sign_disagreement_freq


def default_lambda(n: int, t: float) -> float:
    """The tuned threshold 64 / sqrt(n t); valid only when below 0.1."""
    if t <= 0 or n < 1:
        raise ParameterError("need t > 0 and n >= 1")
    return 64.0 / math.sqrt(n * t)
