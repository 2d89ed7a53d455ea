import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p2riesz import algebra as alg
from p2riesz.algebra import Algebra, DivMatrix, HermitianPD
from p2riesz.errors import DomainError, UnsupportedAlgebraError
from p2riesz.jack import (
    Partition,
    _expand_C,
    _partitions_rl,
    enumerate_partitions,
    jack_C,
    jack_C_identity,
)
from p2riesz.sampling import sample_stiefel

from jack_oracle import jack_C_expansion_bruteforce


class TestPartition:
    def test_normalizes_trailing_zeros(self):
        assert Partition((2, 1, 0, 0)).parts == (2, 1)
        assert Partition(()).degree == 0

    def test_rejects_increasing(self):
        with pytest.raises(DomainError):
            Partition((1, 2))

    def test_conjugate(self):
        assert Partition((3, 1)).conjugate().parts == (2, 1, 1)


class TestEnumeratePartitions:
    def test_examples(self):
        assert [p.parts for p in enumerate_partitions(2, 2)] == [(2,), (1, 1)]
        assert [p.parts for p in enumerate_partitions(3, 2)] == [(3,), (2, 1)]
        assert [p.parts for p in enumerate_partitions(4, 3)] == [
            (4,), (3, 1), (2, 2), (2, 1, 1),
        ]

    def test_counts_match_recurrence(self):
        # p(k) for k = 0..9 with unbounded parts
        expected = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
        for k, count in enumerate(expected):
            assert len(enumerate_partitions(k, max(k, 1))) == count


class TestJackExpansion:
    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_matches_bruteforce_oracle(self, beta):
        # exact Fraction-level agreement with the Gram-Schmidt construction
        for k in range(0, 6):
            for lam in _partitions_rl(k, k):
                assert dict(_expand_C(lam, beta)) == jack_C_expansion_bruteforce(lam, beta)

    def test_known_identity_values(self):
        # real zonal values for degree two, cross-checked by brute force
        assert math.isclose(jack_C_identity((2,), 2, 1), 8.0 / 3.0, rel_tol=1e-14)
        assert math.isclose(jack_C_identity((1, 1), 2, 1), 4.0 / 3.0, rel_tol=1e-14)
        # beta = 2 splits (tr X)^2 = 4 into 3 + 1 (Schur based)
        assert math.isclose(jack_C_identity((2,), 2, 2), 3.0, rel_tol=1e-14)
        assert math.isclose(jack_C_identity((1, 1), 2, 2), 1.0, rel_tol=1e-14)


class TestJackEvaluation:
    def test_degree_one_is_trace(self):
        for beta in (1, 2, 4):
            assert jack_C((1,), (2.0, 3.0), beta) == 5.0

    def test_empty_partition_is_constant_one(self):
        assert jack_C((0,), (0.7, 0.1), 2) == 1.0
        assert jack_C_identity((), 5, 4) == 1.0

    def test_too_many_parts_vanishes(self):
        assert jack_C((1, 1, 1), (2.0, 3.0), 1) == 0.0
        assert jack_C_identity((2, 1, 1), 2, 2) == 0.0

    def test_identity_positive(self):
        for beta in (1, 2, 4):
            for m in (1, 2, 3):
                for k in range(5):
                    for p in enumerate_partitions(k, m):
                        assert jack_C_identity(p, m, beta) > 0.0

    def test_unsupported_beta(self):
        with pytest.raises(UnsupportedAlgebraError):
            jack_C((1,), (1.0,), 8)

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            jack_C((13,), (1.0,), 1)
        assert jack_C((13,), (1.0,), 1, degree_cap=13) == pytest.approx(1.0)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_sum_identity(self, beta):
        rng = np.random.default_rng(beta)
        for m in (1, 2, 3):
            for k in range(1, 5):
                x = rng.uniform(0.05, 2.5, m)
                total = sum(jack_C(p, x, beta) for p in enumerate_partitions(k, m))
                assert abs(total - x.sum() ** k) <= 1e-10 * x.sum() ** k

    @settings(max_examples=40, deadline=None)
    @given(
        beta=st.sampled_from([1, 2, 4]),
        perm=st.permutations([0, 1, 2]),
        seed=st.integers(0, 9999),
    )
    def test_symmetry(self, beta, perm, seed):
        rng = np.random.default_rng(seed)
        x = rng.uniform(0.1, 2.0, 3)
        for kappa in ((2,), (1, 1), (2, 1)):
            a = jack_C(kappa, x, beta)
            b = jack_C(kappa, x[list(perm)], beta)
            assert abs(a - b) <= 1e-13 * max(1.0, abs(a))

    @settings(max_examples=40, deadline=None)
    @given(
        beta=st.sampled_from([1, 2, 4]),
        c=st.floats(0.1, 4.0),
        seed=st.integers(0, 9999),
    )
    def test_homogeneity(self, beta, c, seed):
        rng = np.random.default_rng(seed)
        x = rng.uniform(0.1, 2.0, 2)
        for kappa in ((2,), (1, 1), (3, 1)):
            scaled = jack_C(kappa, c * x, beta)
            expected = c ** sum(kappa) * jack_C(kappa, x, beta)
            assert abs(scaled - expected) <= 1e-12 * max(1.0, abs(expected))


def test_group_average_matches_jack():
    """Haar-averaging the highest weight vector reproduces C for beta = 2."""
    rng = np.random.default_rng(99)
    z = HermitianPD(
        DivMatrix.from_complex(np.array([[1.3, 0.4 - 0.1j], [0.4 + 0.1j, 0.6]]))
    )
    n = 40_000
    h = sample_stiefel(rng, 2, 2, 2, size=n)
    rotated = alg.mat_mul(alg.mat_mul(h, z.data[None], 2), alg.mat_conj_t(h), 2)
    vals = jack_C_identity((1,), 2, 2) * rotated[:, 0, 0, 0]
    target = float(np.sum(alg.diag_real(z.data)))
    se = vals.std(ddof=1) / math.sqrt(n)
    assert abs(vals.mean() - target) <= 3 * se
