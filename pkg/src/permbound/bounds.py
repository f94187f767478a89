"""Log-space upper bounds on |perm(A)| and the tail formulas behind them.

All bounds are carried as natural logarithms because T^n overflows float64
once n ln T passes 709.  Every evaluator returns a LogBound carrying the
inputs it used and named validity flags; ``bound_report`` aggregates them for
a concrete matrix and, when the dimension is small enough for an exact
permanent, reports the slack of the best bound.

The inequalities, for an n x n matrix with ||A||_2 <= T and row-norm means
h2 and hinf:

    norm_power      |perm(A)| <= T^n
    mean_gap        |perm(A)| <= 2 T^n exp[-3 n s^2 / 100],
                    s = 1 - (sqrt(pi)/2) h2/T - (1 - sqrt(pi)/2) hinf/T
    rowmax_gap      |perm(A)| <= 2 T^n exp[-n (1 - hinf/T)^2 / 1e5]
    real_sqrt       |perm(A)| <= T^n (n+6) exp[-sqrt(n (1 - hinf/T)) / 400]
                    (real matrices only)
    real_composite  the four-term tail sum whose closed form the real_sqrt
                    bound rounds up; applicable in the asymptotic regime
                    sqrt(nt) > 640 and sqrt(nt) >= 400 ln n

plus the sampling-side formulas: the mean proxy
mu = Lambda_K h2 + (1 - Lambda_K) hinf, the moment bound
E[(||AX||_1/n)^n] <= 2 exp[-3n(1-mu)^2/100] for norm <= 1, the tail
P(||AX||_1 > E + tn) <= exp(-n t^2 / pi^3) for unit-modulus coordinates, and
the three block-level tails used after a big/small row partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional

import numpy as np

from .constants import E, LAMBDA_COMPLEX, LAMBDA_REAL, PI_CUBED
from .errors import ParameterError
from .exact import RYSER_CAP, perm_ryser
from .linalg import RowStats, operator_norm, row_stats
from .matrix import Field, Matrix

# Instrumentation for the [0, 1] clamp in log_bound_mean_gap: magnitudes of
# every clamped excess, so tests can assert clamping never hides a real
# precondition violation.
_clamp_excesses: List[float] = []


def clamp_event_count() -> int:
    return len(_clamp_excesses)


def clamp_max_excess() -> float:
    return max(_clamp_excesses, default=0.0)


def reset_clamp_events() -> None:
    _clamp_excesses.clear()


def _clamped_unit(s: float) -> float:
    if 0.0 <= s <= 1.0:
        return s
    c = min(1.0, max(0.0, s))
    _clamp_excesses.append(abs(s - c))
    return c


@dataclass(frozen=True)
class LogBound:
    name: str
    log_value: float
    applicable: bool
    conditions: Dict[str, bool] = dc_field(default_factory=dict)
    params: Dict[str, float] = dc_field(default_factory=dict)


@dataclass(frozen=True)
class BoundReport:
    bounds: List[LogBound]
    best: Optional[str]
    log_perm_exact: Optional[float]
    slack: Optional[float]
    n: int
    field: Field
    op_norm: float
    h2: float
    hinf: float


def _check_T(T: float) -> float:
    T = float(T)
    if T <= 0.0:
        raise ParameterError("T must be positive (a zero matrix has perm 0)")
    return T


def log_bound_norm(n: int, T: float) -> LogBound:
    """|perm| <= T^n."""
    T = _check_T(T)
    return LogBound("norm_power", n * math.log(T), True, params={"n": n, "T": T})


def _check_h(T: float, h: float, name: str) -> None:
    if not 0.0 <= h <= T * (1.0 + 1e-8):
        raise ParameterError(f"{name} must lie in [0, T], got {h} with T = {T}")


def log_bound_mean_gap(n: int, T: float, h2: float, hinf: float) -> LogBound:
    """|perm| <= 2 T^n exp[-3 n s^2 / 100] with the two-norm mean proxy gap s."""
    T = _check_T(T)
    _check_h(T, h2, "h2")
    _check_h(T, hinf, "hinf")
    if hinf > h2 * (1.0 + 1e-12):
        raise ParameterError("hinf cannot exceed h2")
    s = _clamped_unit(1.0 - LAMBDA_COMPLEX * h2 / T - (1.0 - LAMBDA_COMPLEX) * hinf / T)
    value = math.log(2.0) + n * math.log(T) - 3.0 * n * s * s / 100.0
    return LogBound(
        "mean_gap", value, True,
        params={"n": n, "T": T, "h2": h2, "hinf": hinf, "s": s},
    )


def log_bound_rowmax_gap(n: int, T: float, hinf: float) -> LogBound:
    """|perm| <= 2 T^n exp[-n (1 - hinf/T)^2 / 1e5]."""
    T = _check_T(T)
    _check_h(T, hinf, "hinf")
    t = 1.0 - hinf / T
    value = math.log(2.0) + n * math.log(T) - n * t * t / 1e5
    return LogBound(
        "rowmax_gap", value, True,
        params={"n": n, "T": T, "hinf": hinf, "t": t},
    )


def log_bound_real_sqrt(n: int, T: float, hinf: float, real_field: bool = True) -> LogBound:
    """|perm| <= T^n (n+6) exp[-sqrt(n t)/400] with t = 1 - hinf/T; real only."""
    T = _check_T(T)
    _check_h(T, hinf, "hinf")
    t = max(1.0 - hinf / T, 0.0)
    value = n * math.log(T) + math.log(n + 6.0) - math.sqrt(n * t) / 400.0
    return LogBound(
        "real_sqrt", value, bool(real_field),
        conditions={"real_field": bool(real_field)},
        params={"n": n, "T": T, "hinf": hinf, "t": t},
    )


def mean_l1_upper(stats: RowStats, field: Field) -> float:
    """Upper bound for E[||AX||_1 / n]: Lambda_K h2 + (1 - Lambda_K) hinf."""
    lam = LAMBDA_REAL if Field(field) is Field.REAL else LAMBDA_COMPLEX
    return lam * stats.h2 + (1.0 - lam) * stats.hinf


def log_moment_bound(n: int, mu: float) -> LogBound:
    """E[(||AX||_1/n)^n] <= 2 exp[-3 n (1 - mu)^2 / 100] for norm <= 1.

    Monotone increasing in mu on [0, 1], so it stays valid when evaluated at
    any upper bound for the true mean (such as ``mean_l1_upper``).
    """
    if not -1e-8 <= mu <= 1.0 + 1e-8:
        raise ParameterError(f"mu must lie in [0, 1], got {mu}")
    mu = min(max(mu, 0.0), 1.0)
    value = math.log(2.0) - 3.0 * n * (1.0 - mu) ** 2 / 100.0
    return LogBound("l1_moment", value, True, params={"n": n, "mu": mu})


def l1_tail_bound(n: int, t: float) -> float:
    """P(||AX||_1 > E[||AX||_1] + t n) <= exp(-n t^2 / pi^3) for norm <= 1."""
    if t < 0 or n < 1:
        raise ParameterError("need t >= 0 and n >= 1")
    return math.exp(-n * t * t / PI_CUBED)


@dataclass(frozen=True)
class SplitTailBounds:
    """The three block-level tail formulas at parameters (n, t, eps, lambda).

    ``cond_*`` are the validity conditions under which the corresponding
    concentration statements were derived; values are reported either way.
    """

    small_block_tail: float  # 4 exp[-eps^2 n lambda / (32 t)]
    sign_mismatch: float  # n exp[-1 / (5 lambda)]
    quad_form_tail: float  # exp[-eps n / (2 e sqrt(n t))]
    cond_log: bool  # eps n >= 16 sqrt(n t log(n) / lambda)
    cond_lambda: bool  # lambda < 0.1
    cond_moment: bool  # eps n >= 4 e sqrt(n t)


def split_tail_bounds(n: int, t: float, epsilon: float, lam: float) -> SplitTailBounds:
    if n < 1 or t <= 0 or epsilon <= 0 or lam <= 0:
        raise ParameterError("need n >= 1, t > 0, epsilon > 0, lambda > 0")
    sqrt_nt = math.sqrt(n * t)
    return SplitTailBounds(
        small_block_tail=4.0 * math.exp(-(epsilon**2) * n * lam / (32.0 * t)),
        sign_mismatch=n * math.exp(-1.0 / (5.0 * lam)),
        quad_form_tail=math.exp(-epsilon * n / (2.0 * E * sqrt_nt)),
        cond_log=epsilon * n >= 16.0 * math.sqrt(n * t * math.log(n) / lam),
        cond_lambda=lam < 0.1,
        cond_moment=epsilon * n >= 4.0 * E * sqrt_nt,
    )


def log_bound_real_composite(n: int, t: float) -> LogBound:
    """Four-term tail sum at eps = t/10 and lambda = 64/sqrt(nt), in log space.

    The terms are

        exp[-n t (1 - sqrt(2/pi) - 0.2)]    envelope of (2 eps + 1 - (1 - sqrt(2/pi)) t)^n
        4 exp[-sqrt(nt) / 50]               small-block deviation
        n exp[-sqrt(nt) / 320]              sign mismatch
        exp[-sqrt(nt) / (20 e)]             quadratic-form deviation

    and their sum is dominated by (n+6) exp[-sqrt(nt)/400] whenever
    sqrt(nt) > 640 and sqrt(nt) >= 400 ln n; the ``dominated`` flag records
    that comparison.
    """
    if n < 1:
        raise ParameterError("n must be at least 1")
    if not 0.0 < t <= 1.0:
        raise ParameterError("t must lie in (0, 1]")
    sqrt_nt = math.sqrt(n * t)
    term_logs = np.array(
        [
            -n * t * (1.0 - LAMBDA_REAL - 0.2),
            math.log(4.0) - sqrt_nt / 50.0,
            math.log(n) - sqrt_nt / 320.0,
            -sqrt_nt / (20.0 * E),
        ]
    )
    log_value = float(np.logaddexp.reduce(term_logs))
    theorem_log = math.log(n + 6.0) - sqrt_nt / 400.0
    cond_lambda = sqrt_nt > 640.0
    cond_log = sqrt_nt >= 400.0 * math.log(n)
    return LogBound(
        "real_composite",
        log_value,
        cond_lambda and cond_log,
        conditions={
            "cond_lambda": cond_lambda,
            "cond_log": cond_log,
            "dominated": log_value <= theorem_log,
        },
        params={
            "n": n,
            "t": t,
            "epsilon": t / 10.0,
            "lambda": 64.0 / sqrt_nt,
            "envelope_log": float(term_logs[0]),
            "small_block_log": float(term_logs[1]),
            "sign_mismatch_log": float(term_logs[2]),
            "quad_form_log": float(term_logs[3]),
            "theorem_log": theorem_log,
        },
    )


def bound_report(
    mat: Matrix,
    norm_bound: Optional[float] = None,
    exact_cap: int = 16,
) -> BoundReport:
    """Evaluate every applicable bound for a matrix and rank them.

    ``norm_bound`` may supply any T >= ||A||_2 (the bounds hold for all such
    T); values below the computed operator norm by more than relative 1e-8
    are rejected.  When n <= exact_cap the exact ln|perm| and the slack of
    the best bound are included.  A zero matrix short-circuits: perm = 0 and
    no bound applies, since the formulas need T > 0.
    """
    n = mat.n
    stats = row_stats(mat)
    if not mat.entries.any():
        dummy = [
            LogBound("norm_power", 0.0, False),
            LogBound("mean_gap", math.log(2.0), False),
            LogBound("rowmax_gap", math.log(2.0), False),
            LogBound("real_sqrt", math.log(n + 6.0), False),
        ]
        return BoundReport(
            bounds=dummy, best=None, log_perm_exact=None, slack=None,
            n=n, field=mat.field, op_norm=0.0, h2=0.0, hinf=0.0,
        )

    op = operator_norm(mat).op_norm
    if norm_bound is not None:
        if norm_bound < op * (1.0 - 1e-8):
            raise ParameterError(
                f"norm bound {norm_bound} is below the operator norm {op}"
            )
        T = float(norm_bound)
    else:
        T = op
    # Lift T by at most one rounding step so h2/T and hinf/T stay <= 1; h2
    # never exceeds the true operator norm, so this is still a valid T.
    T = max(T, stats.h2, stats.hinf)

    bounds = [
        log_bound_norm(n, T),
        log_bound_mean_gap(n, T, stats.h2, stats.hinf),
        log_bound_rowmax_gap(n, T, stats.hinf),
        log_bound_real_sqrt(n, T, stats.hinf, real_field=mat.is_real),
    ]
    t = 1.0 - stats.hinf / T
    if mat.is_real and t > 1e-15:
        composite = log_bound_real_composite(n, t)
        scaled = LogBound(
            composite.name,
            composite.log_value + n * math.log(T),
            composite.applicable,
            conditions=composite.conditions,
            params={**composite.params, "T": T},
        )
        bounds.append(scaled)

    log_perm = None
    slack = None
    best = None
    applicable = [b for b in bounds if b.applicable]
    if applicable:
        best = min(applicable, key=lambda b: b.log_value).name
    if n <= min(exact_cap, RYSER_CAP):
        value = perm_ryser(mat)
        mag = abs(value)
        log_perm = math.log(mag) if mag > 0.0 else None
        if log_perm is not None and best is not None:
            slack = next(b.log_value for b in applicable if b.name == best) - log_perm
    return BoundReport(
        bounds=bounds,
        best=best,
        log_perm_exact=log_perm,
        slack=slack,
        n=n,
        field=mat.field,
        op_norm=op,
        h2=stats.h2,
        hinf=stats.hinf,
    )
