import itertools
import math

import numpy as np
import pytest

import permbound as pb
from permbound.errors import SizeError

ALGORITHMS = [pb.perm_naive, pb.perm_ryser, pb.perm_glynn_exact]


def brute_force_perm(entries):
    """Independent oracle: the defining sum, in pure Python."""
    n = entries.shape[0]
    total = 0
    for sigma in itertools.permutations(range(n)):
        product = 1
        for i in range(n):
            product *= entries[i, sigma[i]]
        total += product
    return total


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_two_by_two(algorithm):
    assert algorithm(pb.real_matrix([[1.0, 2.0], [3.0, 4.0]])) == pytest.approx(10.0)


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_identity(algorithm):
    assert algorithm(pb.identity(6)) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("algorithm", ALGORITHMS)
def test_all_ones_counts_permutations(algorithm):
    assert algorithm(pb.real_matrix(np.ones((3, 3)))) == pytest.approx(6.0)


def test_naive_matches_pure_python_sum():
    rng = np.random.default_rng(55)
    for seed in range(3):
        a = rng.standard_normal((4, 4))
        assert pb.perm_naive(pb.real_matrix(a)) == pytest.approx(
            brute_force_perm(a), rel=1e-12
        )
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    got = pb.perm_naive(pb.complex_matrix(z))
    assert got == pytest.approx(brute_force_perm(z), rel=1e-12)


def test_ryser_diagonal_large():
    mat = pb.real_matrix(np.diag(np.full(20, 0.9)))
    assert pb.perm_ryser(mat) == pytest.approx(0.9**20, rel=1e-12)


def test_ryser_matches_naive_complex():
    rng = np.random.default_rng(7)
    z = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    mat = pb.complex_matrix(z)
    assert pb.perm_ryser(mat) == pytest.approx(pb.perm_naive(mat), rel=1e-10)


def test_glynn_matches_ryser_real_ten():
    rng = np.random.default_rng(10)
    mat = pb.real_matrix(rng.standard_normal((10, 10)))
    assert pb.perm_glynn_exact(mat) == pytest.approx(pb.perm_ryser(mat), rel=1e-9)


def test_glynn_identity_two():
    # every sign vector gives Gly = (x1 x2)^2 = 1
    assert pb.perm_glynn_exact(pb.identity(2)) == pytest.approx(1.0, abs=1e-15)


def test_oracle_triangle_small():
    count = 0
    for seed in range(40):
        n = 2 + seed % 7
        for field in ("real", "complex"):
            mat = pb.generate("row_normalized", n, seed=seed, params={"field": field})
            values = [alg(mat) for alg in ALGORITHMS]
            scale = max(max(abs(v) for v in values), 1e-3)
            for v in values[1:]:
                assert abs(v - values[0]) / scale < 1e-9
            count += 1
    assert count == 80


@pytest.mark.parametrize(
    "algorithm,cap",
    [(pb.perm_naive, 10), (pb.perm_ryser, 30), (pb.perm_glynn_exact, 26)],
)
def test_size_caps(algorithm, cap):
    big = pb.real_matrix(np.eye(cap + 1))
    with pytest.raises(SizeError):
        algorithm(big)
    # caps are configurable
    with pytest.raises(SizeError):
        algorithm(pb.identity(3), cap=2)


def test_modulus_invariant_under_extremal_factors():
    rng = np.random.default_rng(21)
    for seed in range(6):
        n = 3 + seed
        mat = rng.standard_normal((n, n))
        p = pb.generate("phase_permutation", n, seed=seed).entries
        q = pb.generate("phase_permutation", n, seed=seed + 100).entries
        base = abs(pb.perm_ryser(pb.real_matrix(mat)))
        sandwiched = abs(pb.perm_ryser(pb.real_matrix(p @ mat @ q)))
        assert sandwiched == pytest.approx(base, rel=1e-9)


def test_homogeneity():
    rng = np.random.default_rng(33)
    for n in (2, 4, 6):
        a = rng.standard_normal((n, n))
        alpha = 1.7
        scaled = pb.perm_ryser(pb.real_matrix(alpha * a))
        assert scaled == pytest.approx(alpha**n * pb.perm_ryser(pb.real_matrix(a)), rel=1e-9)


def test_norm_power_dominates_permanent():
    for seed in range(15):
        n = 2 + seed % 7
        field = "real" if seed % 2 else "complex"
        mat = pb.generate("circulant", n, seed=seed, params={"field": field, "normalize": True})
        value = abs(pb.perm_ryser(mat))
        op = pb.operator_norm(mat).op_norm
        assert value <= op**n * (1 + 1e-7)


def test_extremal_members_attain_norm_power():
    for seed in range(10):
        n = 2 + seed % 9
        field = "real" if seed % 2 else "complex"
        mat = pb.generate("phase_permutation", n, seed=seed, params={"field": field})
        assert abs(pb.perm_ryser(mat)) == pytest.approx(1.0, abs=1e-8)


def test_field_of_returned_scalar():
    assert isinstance(pb.perm_ryser(pb.identity(3)), float)
    assert isinstance(pb.perm_ryser(pb.complex_matrix(np.eye(3))), complex)


class TestPolarLog:
    def test_positive_value(self):
        form = pb.polar_log(10.0)
        assert form.phase == pytest.approx(1.0)
        assert form.log_abs == pytest.approx(math.log(10.0))

    def test_zero_is_none(self):
        assert pb.polar_log(0.0) is None

    def test_complex_phase_has_unit_modulus(self):
        form = pb.polar_log(3.0 - 4.0j)
        assert abs(form.phase) == pytest.approx(1.0, abs=1e-15)
        assert form.log_abs == pytest.approx(math.log(5.0))

    def test_round_trip(self):
        value = -2.5e-12
        form = pb.polar_log(value)
        assert form.phase * math.exp(form.log_abs) == pytest.approx(value, rel=1e-12)
