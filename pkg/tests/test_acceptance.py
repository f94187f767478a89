"""Acceptance suite: one test per contract criterion, with a printed verdict.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
PASS/FAIL lines.  Tolerances are fixed here and nowhere recalibrated.
"""

import math
import time

import mpmath as mp
import numpy as np
import pytest

import permbound as pb
from permbound.constants import LAMBDA_REAL
from permbound.experiments import TightnessConfig, VerifyConfig, run_tightness, run_verify

mp.mp.dps = 50


def _verdict(num: int, name: str, ok: bool, detail: str = "") -> None:
    print(f"[ACCEPTANCE {num:>2}] {'PASS' if ok else 'FAIL'}  {name}  {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


def _triangle_matrix(field: str, index: int) -> pb.Matrix:
    kinds = ["row_normalized", "circulant", "perturbed_permutation"]
    kind = kinds[index % 3]
    n = 2 + index % 7
    params = {"field": field}
    if kind == "perturbed_permutation":
        params["weight"] = 0.2 + 0.1 * (index % 5)
    return pb.generate(kind, n, seed=1000 + index, params=params)


def test_criterion_1_oracle_triangle():
    start = time.perf_counter()
    checked = 0
    worst = 0.0
    for field in ("real", "complex"):
        for index in range(200):
            mat = _triangle_matrix(field, index)
            values = [pb.perm_naive(mat), pb.perm_ryser(mat), pb.perm_glynn_exact(mat)]
            reference = values[0]
            for other in values[1:]:
                diff = abs(other - reference)
                if max(abs(reference), abs(other)) < 1e-3:
                    assert diff <= 1e-12
                else:
                    rel = diff / max(abs(reference), abs(other))
                    worst = max(worst, rel)
                    assert rel <= 1e-9
            checked += 1
    elapsed = time.perf_counter() - start
    _verdict(
        1, "oracle triangle", checked == 400 and elapsed < 10.0,
        f"{checked} matrices, worst rel dev {worst:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_extremal_equality():
    worst_perm = 0.0
    worst_norm = 0.0
    worst_slack = 0.0
    for index in range(100):
        n = 2 + index % 9
        field = "real" if index % 2 else "complex"
        mat = pb.generate("phase_permutation", n, seed=2000 + index, params={"field": field})
        worst_perm = max(worst_perm, abs(abs(pb.perm_ryser(mat)) - 1.0))
        worst_norm = max(worst_norm, abs(pb.operator_norm(mat).op_norm - 1.0))
        report = pb.bound_report(mat)
        assert report.best == "norm_power"
        worst_slack = max(worst_slack, abs(report.slack))
    ok = worst_perm <= 1e-9 and worst_norm <= 1e-8 and worst_slack <= 1e-8
    _verdict(
        2, "extremal equality", ok,
        f"|perm|-1 max {worst_perm:.1e}, norm-1 max {worst_norm:.1e}, slack max {worst_slack:.1e}",
    )


def test_criterion_3_bound_soundness_sweep():
    start = time.perf_counter()
    report = run_verify(VerifyConfig())
    elapsed = time.perf_counter() - start
    ok = (
        report.matrices_tested >= 1000
        and not report.violations
        and elapsed < 60.0
    )
    _verdict(
        3, "bound soundness sweep", ok,
        f"{report.matrices_tested} matrices, {len(report.violations)} violations, {elapsed:.1f}s",
    )


def test_criterion_4_glynn_identity_by_enumeration():
    worst = 0.0
    for index in range(50):
        field = "real" if index % 2 else "complex"
        n = 2 + index % 11
        mat = pb.generate("row_normalized", n, seed=3000 + index, params={"field": field})
        mean = pb.exact_glynn_mean(mat)
        reference = pb.perm_ryser(mat)
        rel = abs(mean - reference) / max(abs(mean), abs(reference), 1e-300)
        worst = max(worst, rel)
        assert rel <= 1e-9
    _verdict(4, "Glynn identity by enumeration", True, f"50 matrices, worst rel dev {worst:.2e}")


def test_criterion_5_estimator_statistics():
    within = 0
    exceeded_total = 0
    samples_total = 0
    for run in range(100):
        mat = pb.generate("haar_orthogonal", 8, seed=4000 + run)
        report = pb.estimate_perm(mat, samples=100_000, seed=5000 + run)
        exact = pb.perm_ryser(mat)
        assert report.stderr > 0.0
        if abs(report.mean - exact) <= 4.0 * report.stderr:
            within += 1
        exceeded_total += report.exceeded_norm
        samples_total += report.samples
        limit = (report.norm_bound * (1 + 1e-9)) ** 8
        assert report.max_abs_gly <= limit
    ok = within >= 95 and exceeded_total == 0 and samples_total == 10_000_000
    _verdict(
        5, "estimator statistics", ok,
        f"{within}/100 runs within 4 stderr, {exceeded_total} bound exceptions in {samples_total} samples",
    )


def test_criterion_6_mean_bound():
    violations = 0
    for index in range(200):
        field = "real" if index < 100 else "complex"
        kind = ["row_normalized", "circulant", "perturbed_permutation", "haar_orthogonal"][index % 4]
        if kind == "haar_orthogonal" and field == "complex":
            kind = "haar_unitary"
        params = {} if kind.startswith("haar") else {"field": field, "normalize": True}
        n = 2 + index % 11
        mat = pb.generate(kind, n, seed=6000 + index, params=params)
        report = pb.sample_l1(mat, samples=100_000, seed=7000 + index)
        mu = pb.mean_l1_upper(pb.row_stats(mat), mat.field)
        if report.mean_l1_over_n > mu + 5.0 * report.mean_stderr:
            violations += 1
    _verdict(6, "mean bound", violations == 0, f"200 matrices, {violations} violations")


def test_criterion_7_concentration_tail():
    start = time.perf_counter()
    mat = pb.generate("haar_unitary", 200, seed=11, params={"normalize": True})
    report = pb.sample_l1(mat, samples=100_000, seed=12, t_thresholds=[0.4, 0.5, 0.6])
    detail = []
    ok = True
    for t in (0.4, 0.5, 0.6):
        bound = pb.l1_tail_bound(200, t)
        oracle = float(mp.exp(-200 * mp.mpf(t) ** 2 / mp.pi**3))
        assert bound == pytest.approx(oracle, rel=1e-12)
        empirical = report.tail_freqs[t]
        ok = ok and empirical <= bound + 0.005
        detail.append(f"t={t}: {empirical:.4f}<={bound:.4f}+0.005")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 30.0
    _verdict(7, "concentration tail", ok, "; ".join(detail) + f", {elapsed:.1f}s")


def test_criterion_8_moment_bound():
    violations = 0
    for index in range(50):
        kind = ["row_normalized", "circulant", "perturbed_permutation"][index % 3]
        n = 2 + index % 11
        mat = pb.generate(
            kind, n, seed=8000 + index,
            params={"field": "real", "normalize": True, "weight": 0.3},
        )
        moment = pb.exact_l1_moment(mat)
        mu = min(pb.mean_l1_upper(pb.row_stats(mat), mat.field), 1.0)
        bound = math.exp(pb.log_moment_bound(n, mu).log_value)
        if moment > bound:
            violations += 1
    _verdict(8, "moment bound", violations == 0, f"50 matrices, {violations} violations")


def test_criterion_9_split_row_machinery():
    # (a) the mean-proxy identity for the partition blocks
    worst_identity = 0.0
    for index in range(100):
        kind = ["row_normalized", "perturbed_permutation", "circulant"][index % 3]
        n = 4 + index % 9
        mat = pb.generate(
            kind, n, seed=9000 + index,
            params={"field": "real", "normalize": True, "weight": 0.25},
        )
        part = pb.partition_rows(mat, 0.02 + 0.007 * (index % 11))
        mu_b, mu_l = pb.mu_tilde_split(part)
        lhs = (mu_b + mu_l) / n
        rhs = 1.0 - (1.0 - LAMBDA_REAL) * part.t_param
        worst_identity = max(worst_identity, abs(lhs - rhs))
    identity_ok = worst_identity <= 1e-12

    # (b) sign-disagreement frequency against n exp(-1/(5 lambda))
    sign_ok = True
    sign_detail = []
    for n, weight, lam, seed in (
        (16, 0.005, 0.02, 1),
        (20, 0.01, 0.03, 2),
        (24, 0.02, 0.05, 3),
    ):
        mat = pb.generate(
            "perturbed_permutation", n, seed=9500 + seed,
            params={"weight": weight, "normalize": True},
        )
        part = pb.partition_rows(mat, lam)
        assert part.b >= 1  # the check must not be vacuous
        freq = pb.quadratic_form_diag(part, samples=100_000, seed=seed)
        bound = n * math.exp(-1.0 / (5.0 * lam))
        sign_ok = sign_ok and freq <= bound + 0.002
        sign_detail.append(f"n={n}: {freq:.4f}<={bound:.4f}+0.002")

    # (c) the four-term sum is dominated by (n+6) exp(-sqrt(nt)/400) on a
    # wide (n, t) grid restricted to the asymptotic validity region
    ns = np.unique(np.geomspace(1e3, 1e12, 250).astype(np.int64))
    ts = np.geomspace(1e-4, 1.0, 250)
    points = 0
    dominated = True
    for n in ns:
        sqrt_nt = np.sqrt(float(n) * ts)
        valid = (sqrt_nt > 640.0) & (sqrt_nt >= 400.0 * math.log(n))
        for t in ts[valid]:
            b = pb.log_bound_real_composite(int(n), float(t))
            points += 1
            if not b.conditions["dominated"]:
                dominated = False
    grid_ok = dominated and points >= 10_000

    _verdict(
        9, "split-row machinery",
        identity_ok and sign_ok and grid_ok,
        f"identity dev {worst_identity:.1e}; {'; '.join(sign_detail)}; "
        f"{points} grid points dominated={dominated}",
    )


def test_criterion_10_scaled_identity_probe():
    report = run_tightness(TightnessConfig(deltas=[0.5, 0.9, 0.99], ns=[10, 100, 1000]))
    ok = not report.violations and all(r.envelope_ok for r in report.rows if r.asserted)
    # recorded, not asserted: the distance from the closed-form bounds to the
    # true decay rate, evidence that the true rate is exp(-n (1 - hinf))
    gaps = {(r.n, r.delta): round(r.gap_rowmax, 3) for r in report.rows}
    _verdict(10, "scaled-identity tightness probe", ok, f"gaps to rowmax bound: {gaps}")
