"""The randomized Glynn estimator and l1 concentration sampling.

For x with unit-modulus coordinates and y = Ax, the Glynn value is

    Gly_x(A) = prod_i conj(x_i) * prod_i y_i,

and perm(A) = E[Gly_X(A)] when the coordinates of X are independent and
uniform on |z| = 1 (uniform on {-1, 1} in the real field).  Every sample
obeys |Gly_x(A)| <= (||Ax||_1 / n)^n <= ||A||_2^n, which is what makes the
estimator's per-sample diagnostics meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, Iterator, Optional, Tuple

import numpy as np

from . import rng
from .errors import ParameterError
from .exact import perm_ryser
from .linalg import operator_norm
from .matrix import Matrix, Scalar

_UNIT_TOL = 1e-9
_ENUM_CAP = 24  # 2^n sign vectors; enumeration beyond this is not desk-scale


@dataclass(frozen=True)
class EstimateReport:
    """Monte Carlo permanent estimate with per-sample bound diagnostics.

    ``exceeded_norm`` counts samples with |Gly| above (T * (1 + 1e-9))^n; it
    must be 0 whenever T is at least the operator norm.
    """

    mean: Scalar
    stderr: float
    samples: int
    seed: int
    max_abs_gly: float
    exceeded_norm: int
    norm_bound: float


@dataclass(frozen=True)
class ConcentrationReport:
    """Empirical behaviour of ||AX||_1 / n over unit-modulus samples."""

    mean_l1_over_n: float
    mean_stderr: float
    log_nth_moment: float  # log of the empirical mean of (||AX||_1 / n)^n
    max_l1_over_n: float
    tail_freqs: Dict[float, float]
    samples: int
    seed: int
    sign_disagreement_freq: Optional[float] = None


def _sample_blocks(mat: Matrix, samples: int, seed: int) -> Iterator[Tuple[int, np.ndarray]]:
    if mat.is_real:
        return rng.sign_blocks(seed, mat.n, samples)
    return rng.phase_blocks(seed, mat.n, samples)


def glynn_value(mat: Matrix, x: np.ndarray) -> Scalar:
    """Evaluate one Glynn sample; x must have unit-modulus coordinates."""
    x = np.asarray(x)
    if x.shape != (mat.n,):
        raise ParameterError(f"sample vector must have shape ({mat.n},)")
    if np.max(np.abs(np.abs(x) - 1.0)) > _UNIT_TOL:
        raise ParameterError("sample vector coordinates must have modulus 1")
    y = mat.entries @ x
    value = np.prod(np.conj(x)) * np.prod(y)
    return float(value.real) if (mat.is_real and not np.iscomplexobj(x)) else complex(value)


def _gly_block(entries: np.ndarray, block: np.ndarray) -> np.ndarray:
    y = block @ entries.T
    return np.conj(block).prod(axis=1) * y.prod(axis=1)


def estimate_perm(
    mat: Matrix,
    samples: int,
    seed: int,
    norm_bound: Optional[float] = None,
) -> EstimateReport:
    """Estimate perm(A) as the empirical mean of Gly over ``samples`` draws.

    Bitwise-reproducible for fixed (seed, samples).  ``norm_bound`` defaults
    to the computed operator norm; passing a value below it (beyond relative
    1e-8) is rejected, since the per-sample bound |Gly| <= T^n needs
    T >= ||A||_2.
    """
    if samples < 1:
        raise ParameterError("samples must be at least 1")
    op = operator_norm(mat).op_norm
    if norm_bound is None:
        bound = op
    else:
        if norm_bound < op * (1.0 - 1e-8):
            raise ParameterError(
                f"norm bound {norm_bound} is below the operator norm {op}"
            )
        bound = float(norm_bound)
    threshold = (bound * (1.0 + 1e-9)) ** mat.n

    total = 0.0 + 0.0j
    total_sq_re = 0.0
    total_sq_im = 0.0
    max_abs = 0.0
    exceeded = 0
    for _, block in _sample_blocks(mat, samples, seed):
        gly = _gly_block(mat.entries, block)
        total += gly.sum()
        total_sq_re += float((gly.real * gly.real).sum())
        total_sq_im += float((gly.imag * gly.imag).sum())
        abs_gly = np.abs(gly)
        max_abs = max(max_abs, float(abs_gly.max()))
        exceeded += int((abs_gly > threshold).sum())

    mean = total / samples
    if samples > 1:
        var_re = max(total_sq_re - samples * mean.real**2, 0.0) / (samples - 1)
        var_im = max(total_sq_im - samples * mean.imag**2, 0.0) / (samples - 1)
        stderr = math.sqrt((var_re + var_im) / samples)
    else:
        stderr = 0.0
    return EstimateReport(
        mean=mean.real if mat.is_real else mean,
        stderr=stderr,
        samples=samples,
        seed=seed,
        max_abs_gly=max_abs,
        exceeded_norm=exceeded,
        norm_bound=bound,
    )


def sample_l1(
    mat: Matrix,
    samples: int,
    seed: int,
    t_thresholds: Iterable[float] = (),
) -> ConcentrationReport:
    """Sample v = ||AX||_1 / n and report its mean, n-th moment, and tails.

    Tail frequencies are measured against the empirical mean: for each
    threshold t, the fraction of samples with v > mean(v) + t.  The n-th
    moment is returned in log space to survive large n.
    """
    if samples < 1:
        raise ParameterError("samples must be at least 1")
    thresholds = [float(t) for t in t_thresholds]
    if any(t < 0 for t in thresholds):
        raise ParameterError("thresholds must be nonnegative")
    n = mat.n
    values = np.empty(samples)
    for start, block in _sample_blocks(mat, samples, seed):
        y = block @ mat.entries.T
        values[start : start + len(block)] = np.abs(y).sum(axis=1) / n

    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    with np.errstate(divide="ignore"):
        log_moment = float(
            np.logaddexp.reduce(n * np.log(values)) - math.log(samples)
        )
    tails = {t: float((values > mean + t).mean()) for t in thresholds}
    return ConcentrationReport(
        mean_l1_over_n=mean,
        mean_stderr=stderr,
        log_nth_moment=log_moment,
        max_l1_over_n=float(values.max()),
        tail_freqs=tails,
        samples=samples,
        seed=seed,
    )


def _enumerated_signs(n: int) -> Iterator[np.ndarray]:
    """All 2^n sign vectors as (chunk, n) blocks, in binary counting order."""
    if n > _ENUM_CAP:
        raise ParameterError(f"sign enumeration supports n <= {_ENUM_CAP}, got {n}")
    total = 1 << n
    chunk = min(total, rng.BLOCK)
    cols = np.arange(n)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = (codes[:, None] >> cols[None, :]) & 1
        yield 1.0 - 2.0 * bits


def exact_glynn_mean(mat: Matrix) -> Scalar:
    """Average Gly over all 2^n sign vectors through the sampling path.

    Semantically equal to perm(A); used to check the estimator identity
    against the Ryser value by a route independent of both compiled kernels.
    """
    total = 0.0 + 0.0j
    for block in _enumerated_signs(mat.n):
        total += _gly_block(mat.entries, block).sum()
    value = total / (1 << mat.n)
    return float(value.real) if mat.is_real else complex(value)


def exact_l1_moment(mat: Matrix) -> float:
    """Full-enumeration E[(||AX||_1 / n)^n] over the sign hypercube."""
    n = mat.n
    total = 0.0
    for block in _enumerated_signs(n):
        v = np.abs(block @ mat.entries.T).sum(axis=1) / n
        total += float((v**n).sum())
    return total / (1 << n)


def exact_reference(mat: Matrix) -> Scalar:
    """Exact permanent used as ground truth in estimator checks."""
    return perm_ryser(mat)
