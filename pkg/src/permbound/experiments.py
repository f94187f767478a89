"""The three standard experiments: verify, concentration, and tightness.

Each experiment takes a pydantic config, is fully reproducible from that
config (the config is echoed into the report), and returns a report model
that serializes to stable JSON.  Violation lists are empty when every
asserted inequality held.
"""

from __future__ import annotations

import math
import statistics
from typing import Dict, List, Optional

from pydantic import BaseModel, Field as PField

from .bounds import (
    bound_report,
    l1_tail_bound,
    log_bound_mean_gap,
    log_bound_real_sqrt,
    log_bound_rowmax_gap,
    split_tail_bounds,
)
from .ensembles import EnsembleKind, generate
from .errors import ParameterError
from .linalg import operator_norm, row_stats
from .matio import load_matrix
from .matrix import Field as MatrixField, Matrix
from .partition import default_lambda, partition_rows, partition_tail_stats
from .sampling import sample_l1

# ---------------------------------------------------------------------------
# verify: soundness sweep of every bound against exact permanents


class VerifyConfig(BaseModel):
    seed: int = 2016
    n_min: int = 2
    n_max: int = 12
    reps: int = 9
    ensembles: Optional[List[str]] = None  # "kind:field" pairs; None = all
    slack_factor: float = 1e-7  # allowed excess is slack_factor * n


class VerifyViolation(BaseModel):
    matrix_id: str
    bound: str
    log_perm: float
    log_value: float


class SlackStats(BaseModel):
    count: int
    min: float
    median: float


class VerifyReport(BaseModel):
    matrices_tested: int
    violations: List[VerifyViolation]
    slack: Dict[str, SlackStats]
    config: VerifyConfig


_DEFAULT_COMBOS = [
    ("phase_permutation", "real"),
    ("phase_permutation", "complex"),
    ("haar_orthogonal", "real"),
    ("haar_unitary", "complex"),
    ("scaled_identity", "real"),
    ("circulant", "real"),
    ("circulant", "complex"),
    ("perturbed_permutation", "real"),
    ("perturbed_permutation", "complex"),
    ("row_normalized", "real"),
    ("row_normalized", "complex"),
]

_DELTA_CYCLE = [0.3, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.999]
_WEIGHT_CYCLE = [0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.0]


def _combo_params(kind: str, field: str, rep: int) -> dict:
    if kind == "scaled_identity":
        return {"delta": _DELTA_CYCLE[rep % len(_DELTA_CYCLE)], "field": field}
    if kind == "perturbed_permutation":
        return {
            "weight": _WEIGHT_CYCLE[rep % len(_WEIGHT_CYCLE)],
            "field": field,
            "normalize": True,
        }
    if kind in ("circulant", "row_normalized"):
        return {"field": field, "normalize": True}
    if kind == "phase_permutation":
        return {"field": field}
    return {}


def run_verify(config: VerifyConfig) -> VerifyReport:
    if config.n_min < 1 or config.n_max < config.n_min:
        raise ParameterError("need 1 <= n_min <= n_max")
    if config.n_max > 16:
        raise ParameterError("verify needs exact permanents; keep n_max <= 16")
    if config.ensembles is None:
        combos = _DEFAULT_COMBOS
    else:
        combos = []
        for item in config.ensembles:
            kind, _, field = item.partition(":")
            try:
                EnsembleKind(kind)
            except ValueError:
                raise ParameterError(f"unknown ensemble kind {kind!r}") from None
            combos.append((kind, field or "real"))

    tested = 0
    violations: List[VerifyViolation] = []
    slacks: Dict[str, List[float]] = {}
    index = 0
    for kind, field in combos:
        key = f"{kind}:{field}"
        slacks[key] = []
        for n in range(config.n_min, config.n_max + 1):
            for rep in range(config.reps):
                seed_i = config.seed + 7919 * index
                index += 1
                mat = generate(kind, n, seed=seed_i, params=_combo_params(kind, field, rep))
                report = bound_report(mat, exact_cap=config.n_max)
                tested += 1
                matrix_id = f"{key}:n={n}:rep={rep}"
                if report.log_perm_exact is None:
                    continue  # perm == 0 is below every bound
                allowed = config.slack_factor * n
                for b in report.bounds:
                    if b.applicable and report.log_perm_exact > b.log_value + allowed:
                        violations.append(
                            VerifyViolation(
                                matrix_id=matrix_id,
                                bound=b.name,
                                log_perm=report.log_perm_exact,
                                log_value=b.log_value,
                            )
                        )
                if report.slack is not None:
                    slacks[key].append(report.slack)

    slack_stats = {
        key: SlackStats(count=len(vals), min=min(vals), median=statistics.median(vals))
        for key, vals in slacks.items()
        if vals
    }
    return VerifyReport(
        matrices_tested=tested,
        violations=violations,
        slack=slack_stats,
        config=config,
    )


# ---------------------------------------------------------------------------
# concentration: empirical tails of ||AX||_1 against the closed-form bounds


class ConcMatrixSpec(BaseModel):
    kind: Optional[str] = None
    n: Optional[int] = None
    params: dict = PField(default_factory=dict)
    path: Optional[str] = None  # alternative: load the matrix from a file
    lam: Optional[float] = None  # partition threshold override (real only)
    label: Optional[str] = None


class ConcentrationConfig(BaseModel):
    seed: int = 7
    samples: int = 20_000
    thresholds: List[float] = PField(default_factory=lambda: [0.3, 0.4, 0.5])
    tail_slack: float = 0.005
    sign_slack: float = 0.002
    matrices: Optional[List[ConcMatrixSpec]] = None


class ConcentrationRow(BaseModel):
    matrix_id: str
    check: str
    threshold: float
    empirical: float
    bound: float
    asserted: bool
    ok: bool


class ConcentrationSummary(BaseModel):
    matrix_id: str
    n: int
    field: str
    op_norm: float
    mean_l1_over_n: float
    mean_stderr: float
    log_nth_moment: Optional[float]
    max_l1_over_n: float
    sign_disagreement_freq: Optional[float] = None


class ConcentrationReportModel(BaseModel):
    summaries: List[ConcentrationSummary]
    rows: List[ConcentrationRow]
    violations: List[ConcentrationRow]
    config: ConcentrationConfig


_DEFAULT_CONC_MATRICES = [
    ConcMatrixSpec(kind="haar_unitary", n=64, params={"normalize": True}, label="haar_unitary_64"),
    ConcMatrixSpec(
        kind="circulant", n=48, params={"field": "complex", "normalize": True},
        label="circulant_complex_48",
    ),
    ConcMatrixSpec(
        kind="perturbed_permutation", n=20,
        params={"weight": 0.02, "field": "real", "normalize": True},
        lam=0.05, label="near_extremal_real_20",
    ),
]


def _spec_matrix(spec: ConcMatrixSpec, base_seed: int, index: int) -> tuple:
    if spec.path:
        mat = load_matrix(spec.path)
        label = spec.label or spec.path
    else:
        if spec.kind is None or spec.n is None:
            raise ParameterError("matrix spec needs either a path or kind and n")
        mat = generate(spec.kind, spec.n, seed=base_seed + 104729 * index, params=spec.params)
        label = spec.label or f"{spec.kind}:n={spec.n}:{index}"
    return mat, label


def run_concentration(config: ConcentrationConfig) -> ConcentrationReportModel:
    if config.samples < 1:
        raise ParameterError("samples must be at least 1")
    specs = config.matrices if config.matrices is not None else _DEFAULT_CONC_MATRICES
    assert_active = config.samples >= 10_000

    summaries: List[ConcentrationSummary] = []
    rows: List[ConcentrationRow] = []
    for index, spec in enumerate(specs):
        mat, label = _spec_matrix(spec, config.seed, index)
        op = operator_norm(mat).op_norm
        report = sample_l1(mat, config.samples, config.seed + index, config.thresholds)
        n = mat.n

        # range check: 0 <= ||AX||_1 / n <= ||A||_2 holds samplewise
        rows.append(
            ConcentrationRow(
                matrix_id=label, check="l1_range", threshold=0.0,
                empirical=report.max_l1_over_n, bound=op * (1.0 + 1e-9),
                asserted=True, ok=report.max_l1_over_n <= op * (1.0 + 1e-9),
            )
        )
        for t in config.thresholds:
            bound = l1_tail_bound(n, t)
            if mat.field is MatrixField.COMPLEX:
                asserted = assert_active and bound < 1.0
                emp = report.tail_freqs[t]
                rows.append(
                    ConcentrationRow(
                        matrix_id=label, check="l1_tail", threshold=t,
                        empirical=emp, bound=bound, asserted=asserted,
                        ok=(not asserted) or emp <= bound + config.tail_slack,
                    )
                )
            else:
                # recorded for reference; the unit-modulus tail bound is not
                # asserted for sign-vector sampling
                rows.append(
                    ConcentrationRow(
                        matrix_id=label, check="l1_tail", threshold=t,
                        empirical=report.tail_freqs[t], bound=bound,
                        asserted=False, ok=True,
                    )
                )

        sign_freq = None
        if mat.is_real and op <= 1.0 + 1e-8:
            stats = row_stats(mat)
            t_param = 1.0 - stats.hinf
            lam = spec.lam
            if lam is None and t_param > 0:
                auto = default_lambda(n, t_param)
                lam = auto if auto < 0.1 else None
            if lam is not None and 0.0 < lam < 0.1 and t_param > 0:
                part = partition_rows(mat, lam)
                eps = t_param / 10.0
                tails = partition_tail_stats(part, eps, config.samples, config.seed + index)
                formulas = split_tail_bounds(n, t_param, eps, lam)
                sign_freq = tails.sign_disagreement_freq
                for check, emp, bound, valid in (
                    ("small_block_tail", tails.small_exceed_freq, formulas.small_block_tail, formulas.cond_log),
                    ("sign_mismatch", tails.sign_disagreement_freq, formulas.sign_mismatch, formulas.cond_lambda),
                    ("quad_form_tail", tails.quad_exceed_freq, formulas.quad_form_tail, formulas.cond_moment),
                ):
                    slack = config.sign_slack if check == "sign_mismatch" else config.tail_slack
                    asserted = assert_active and valid and bound < 1.0
                    rows.append(
                        ConcentrationRow(
                            matrix_id=label, check=check, threshold=eps * n,
                            empirical=emp, bound=bound, asserted=asserted,
                            ok=(not asserted) or emp <= bound + slack,
                        )
                    )

        summaries.append(
            ConcentrationSummary(
                matrix_id=label,
                n=n,
                field=mat.field.value,
                op_norm=op,
                mean_l1_over_n=report.mean_l1_over_n,
                mean_stderr=report.mean_stderr,
                log_nth_moment=report.log_nth_moment if math.isfinite(report.log_nth_moment) else None,
                max_l1_over_n=report.max_l1_over_n,
                sign_disagreement_freq=sign_freq,
            )
        )

    violations = [row for row in rows if not row.ok]
    return ConcentrationReportModel(
        summaries=summaries, rows=rows, violations=violations, config=config
    )


# ---------------------------------------------------------------------------
# tightness: the delta * I probe of how fast the true permanent decays


class TightnessConfig(BaseModel):
    deltas: List[float] = PField(default_factory=lambda: [0.5, 0.9, 0.99])
    ns: List[int] = PField(default_factory=lambda: [10, 100, 1000])


class TightnessRow(BaseModel):
    n: int
    delta: float
    log_perm: float  # n ln(delta), exact for delta * I
    envelope_low: float  # -n (1 - delta) (1 + (1 - delta))
    envelope_high: float  # -n (1 - delta)
    asserted: bool  # second-order envelope asserted for delta >= 0.5
    envelope_ok: bool
    mean_gap_log: float
    rowmax_gap_log: float
    real_sqrt_log: float
    gap_rowmax: float  # rowmax_gap_log - log_perm, recorded evidence only


class TightnessReport(BaseModel):
    rows: List[TightnessRow]
    violations: List[TightnessRow]
    config: TightnessConfig


def run_tightness(config: TightnessConfig) -> TightnessReport:
    if any(not 0.0 < d <= 1.0 for d in config.deltas):
        raise ParameterError("deltas must lie in (0, 1]")
    if any(n < 1 for n in config.ns):
        raise ParameterError("ns must be positive")
    rows: List[TightnessRow] = []
    for n in config.ns:
        for delta in config.deltas:
            u = 1.0 - delta
            log_perm = n * math.log(delta)
            low = -n * u * (1.0 + u)
            high = -n * u
            asserted = delta >= 0.5
            ok = low <= log_perm <= high
            mean_gap = log_bound_mean_gap(n, 1.0, delta, delta).log_value
            rowmax = log_bound_rowmax_gap(n, 1.0, delta).log_value
            real_sqrt = log_bound_real_sqrt(n, 1.0, delta).log_value
            rows.append(
                TightnessRow(
                    n=n, delta=delta, log_perm=log_perm,
                    envelope_low=low, envelope_high=high,
                    asserted=asserted, envelope_ok=ok,
                    mean_gap_log=mean_gap, rowmax_gap_log=rowmax,
                    real_sqrt_log=real_sqrt, gap_rowmax=rowmax - log_perm,
                )
            )
    violations = [row for row in rows if row.asserted and not row.envelope_ok]
    return TightnessReport(rows=rows, violations=violations, config=config)
