import itertools
import math

import numpy as np
import pytest

import permbound as pb
from permbound import rng as pbrng
from permbound.errors import ParameterError


class TestGlynnValue:
    def test_identity_with_mixed_signs(self):
        assert pb.glynn_value(pb.identity(2), np.array([1.0, -1.0])) == pytest.approx(1.0)

    def test_hand_example(self):
        mat = pb.real_matrix([[1.0, 2.0], [3.0, 4.0]])
        # y = (3, 7) for the all-ones vector
        assert pb.glynn_value(mat, np.array([1.0, 1.0])) == pytest.approx(21.0)

    def test_mean_over_all_sign_vectors_is_permanent(self):
        mat = pb.real_matrix([[1.0, 2.0], [3.0, 4.0]])
        values = [
            pb.glynn_value(mat, np.array(x, dtype=float))
            for x in itertools.product((-1, 1), repeat=2)
        ]
        assert np.mean(values) == pytest.approx(10.0)

    def test_rejects_bad_vectors(self):
        mat = pb.identity(3)
        with pytest.raises(ParameterError):
            pb.glynn_value(mat, np.ones(2))
        with pytest.raises(ParameterError):
            pb.glynn_value(mat, np.array([1.0, 1.0, 0.5]))

    def test_complex_vector(self):
        mat = pb.complex_matrix(np.eye(2))
        x = np.exp(1j * np.array([0.3, 1.1]))
        # conj(prod x) * prod x = |prod x|^2 = 1 for a unitary diagonal of I
        assert pb.glynn_value(mat, x) == pytest.approx(1.0 + 0.0j)


class TestEstimatePerm:
    def test_identity_has_zero_variance(self):
        report = pb.estimate_perm(pb.identity(5), samples=100, seed=123)
        assert report.mean == 1.0
        assert report.stderr == 0.0
        assert report.exceeded_norm == 0

    def test_zero_matrix(self):
        report = pb.estimate_perm(pb.real_matrix(np.zeros((3, 3))), samples=50, seed=1)
        assert report.mean == 0.0
        assert report.stderr == 0.0

    def test_bitwise_deterministic(self):
        mat = pb.generate("haar_orthogonal", 6, seed=9)
        a = pb.estimate_perm(mat, samples=9000, seed=4)
        b = pb.estimate_perm(mat, samples=9000, seed=4)
        assert a.mean == b.mean and a.stderr == b.stderr
        c = pb.estimate_perm(mat, samples=9000, seed=5)
        assert c.mean != a.mean

    def test_close_to_exact_value(self):
        mat = pb.generate("haar_orthogonal", 8, seed=5)
        report = pb.estimate_perm(mat, samples=50_000, seed=7)
        exact = pb.perm_ryser(mat)
        assert abs(report.mean - exact) <= 5 * report.stderr

    def test_complex_field_sampling(self):
        mat = pb.generate("haar_unitary", 6, seed=2)
        report = pb.estimate_perm(mat, samples=50_000, seed=11)
        exact = pb.perm_ryser(mat)
        assert abs(report.mean - exact) <= 5 * report.stderr
        assert report.exceeded_norm == 0

    def test_per_sample_bound(self):
        for seed in range(5):
            mat = pb.generate("circulant", 6, seed=seed, params={"normalize": True})
            report = pb.estimate_perm(mat, samples=4000, seed=seed)
            limit = (report.norm_bound * (1 + 1e-9)) ** mat.n
            assert report.max_abs_gly <= limit
            assert report.exceeded_norm == 0

    def test_rejects_low_norm_bound(self):
        mat = pb.real_matrix([[1.0, 2.0], [3.0, 4.0]])
        with pytest.raises(ParameterError):
            pb.estimate_perm(mat, samples=10, seed=0, norm_bound=0.5)

    def test_accepts_larger_norm_bound(self):
        mat = pb.identity(3)
        report = pb.estimate_perm(mat, samples=10, seed=0, norm_bound=2.0)
        assert report.norm_bound == 2.0

    def test_rejects_zero_samples(self):
        with pytest.raises(ParameterError):
            pb.estimate_perm(pb.identity(2), samples=0, seed=0)


def test_stream_is_pure_in_sample_index():
    # draw j is unchanged by the total sample count requested
    short = np.vstack([b for _, b in pbrng.sign_blocks(99, 4, 10)])
    long = np.vstack([b for _, b in pbrng.sign_blocks(99, 4, 5000)])
    assert np.array_equal(short, long[:10])


def test_phase_blocks_unit_modulus():
    block = next(pbrng.phase_blocks(1, 8, 100))[1]
    assert np.abs(np.abs(block) - 1.0).max() <= 1e-15


class TestSampleL1:
    def test_identity_is_constant(self):
        report = pb.sample_l1(pb.identity(7), samples=500, seed=3, t_thresholds=[0.1, 0.5])
        assert report.mean_l1_over_n == pytest.approx(1.0, abs=1e-15)
        assert report.tail_freqs == {0.1: 0.0, 0.5: 0.0}
        assert report.log_nth_moment == pytest.approx(0.0, abs=1e-12)

    def test_hadamard_is_constant(self):
        mat = pb.real_matrix(np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0))
        report = pb.sample_l1(mat, samples=256, seed=0)
        assert report.mean_l1_over_n == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-12)
        assert report.mean_stderr == pytest.approx(0.0, abs=1e-15)

    def test_values_bounded_by_operator_norm(self):
        for seed in range(5):
            mat = pb.generate("haar_unitary", 12, seed=seed)
            report = pb.sample_l1(mat, samples=3000, seed=seed)
            op = pb.operator_norm(mat).op_norm
            assert 0.0 <= report.max_l1_over_n <= op * (1 + 1e-9)

    def test_mean_upper_bound(self):
        # empirical mean stays below the Khintchine-type proxy
        for seed in range(8):
            field = "real" if seed % 2 else "complex"
            mat = pb.generate("row_normalized", 6, seed=seed, params={"field": field, "normalize": True})
            report = pb.sample_l1(mat, samples=20_000, seed=seed)
            mu = pb.mean_l1_upper(pb.row_stats(mat), mat.field)
            assert report.mean_l1_over_n <= mu + 5 * report.mean_stderr

    def test_deterministic(self):
        mat = pb.generate("circulant", 5, seed=1, params={"normalize": True})
        a = pb.sample_l1(mat, samples=2000, seed=8, t_thresholds=[0.2])
        b = pb.sample_l1(mat, samples=2000, seed=8, t_thresholds=[0.2])
        assert a.mean_l1_over_n == b.mean_l1_over_n
        assert a.log_nth_moment == b.log_nth_moment

    def test_rejects_negative_threshold(self):
        with pytest.raises(ParameterError):
            pb.sample_l1(pb.identity(2), samples=10, seed=0, t_thresholds=[-0.1])


def brute_force_l1_moment(entries):
    n = entries.shape[0]
    total = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=n):
        v = np.abs(entries @ np.array(signs)).sum() / n
        total += v**n
    return total / 2**n


class TestEnumeration:
    def test_glynn_mean_matches_ryser(self):
        for seed in range(12):
            n = 2 + seed % 9
            field = "real" if seed % 2 else "complex"
            mat = pb.generate("row_normalized", n, seed=seed, params={"field": field})
            lhs = pb.exact_glynn_mean(mat)
            rhs = pb.perm_ryser(mat)
            assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), abs(rhs), 1e-3)

    def test_l1_moment_matches_brute_force(self):
        rng = np.random.default_rng(70)
        for n in (2, 4, 6):
            mat = pb.generate("haar_orthogonal", n, seed=n).scaled(0.8)
            assert pb.exact_l1_moment(mat) == pytest.approx(
                brute_force_l1_moment(mat.entries), rel=1e-12
            )

    def test_l1_moment_respects_closed_form_bound(self):
        for seed in range(6):
            mat = pb.generate("row_normalized", 8, seed=seed, params={"field": "real", "normalize": True})
            mu = pb.mean_l1_upper(pb.row_stats(mat), mat.field)
            bound = math.exp(pb.log_moment_bound(mat.n, min(mu, 1.0)).log_value)
            assert pb.exact_l1_moment(mat) <= bound
