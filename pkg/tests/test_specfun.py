import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p2riesz.algebra import Algebra, DivMatrix, HermitianPD
from p2riesz.errors import DomainError
from p2riesz.specfun import (
    gen_pochhammer,
    ln_beta_classic,
    ln_beta_star,
    ln_mv_gamma,
    ln_q_weight,
    ln_stiefel_volume,
    q_weight,
)

from helpers import random_pd, random_upper


class TestLnMvGamma:
    def test_scalar_half(self):
        assert math.isclose(ln_mv_gamma(1, 1, 0.5), math.log(math.sqrt(math.pi)), rel_tol=1e-14)

    def test_two_by_two_real(self):
        # Gamma_2^1[2] = sqrt(pi) Gamma(2) Gamma(1.5) = pi / 2
        assert math.isclose(ln_mv_gamma(1, 2, 2.0), math.log(math.pi / 2), rel_tol=1e-14)

    def test_weighted_complex(self):
        # pi * Gamma(3) Gamma(1) = 2 pi
        assert math.isclose(ln_mv_gamma(2, 2, 2.0, (1, 0)), math.log(2 * math.pi), rel_tol=1e-14)

    def test_product_formula_against_scalar_gamma(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            beta = int(rng.choice([1, 2, 4, 8]))
            m = int(rng.integers(1, 4))
            kappa = np.sort(rng.uniform(-0.3, 2.0, m))[::-1]
            a = (m - 1) * beta / 2.0 - kappa[-1] + rng.uniform(0.1, 3.0)
            args = a + kappa - np.arange(m) * beta / 2.0
            if np.any(args <= 0):
                continue
            expected = m * (m - 1) * beta / 4.0 * math.log(math.pi)
            expected += sum(math.lgamma(v) for v in args)
            assert math.isclose(ln_mv_gamma(beta, m, a, kappa), expected, rel_tol=1e-13)

    def test_domain_error_names_index(self):
        with pytest.raises(DomainError, match="index i = 2"):
            ln_mv_gamma(2, 3, 1.0)


class TestGenPochhammer:
    def test_zero_weight_is_one(self):
        for beta in (1, 2, 4, 8):
            assert gen_pochhammer(beta, 3, 1.7, (0, 0, 0)) == 1.0

    def test_scalar_rising_factorial(self):
        assert math.isclose(gen_pochhammer(2, 1, 2.0, 3), 24.0, rel_tol=1e-13)

    def test_two_component_product(self):
        assert math.isclose(gen_pochhammer(1, 2, 3.0, (2, 1)), 30.0, rel_tol=1e-13)

    def test_matches_gamma_ratio(self):
        rng = np.random.default_rng(2)
        for _ in range(60):
            beta = int(rng.choice([1, 2, 4]))
            m = int(rng.integers(1, 4))
            a = (m - 1) * beta / 2.0 + rng.uniform(0.2, 5.0)
            kappa = np.sort(rng.integers(0, 4, m))[::-1].astype(float)
            direct = gen_pochhammer(beta, m, a, kappa)
            ratio = math.exp(ln_mv_gamma(beta, m, a, kappa) - ln_mv_gamma(beta, m, a))
            assert abs(direct - ratio) <= 1e-10 * abs(ratio)

    def test_pole_raises(self):
        # gamma ratio hits Gamma(0) in the numerator
        with pytest.raises(DomainError):
            gen_pochhammer(1, 1, -0.5, 0.5)


class TestQWeight:
    def test_identity_is_one(self):
        s = HermitianPD.identity(Algebra.QUATERNION, 3)
        assert q_weight(s, (2.5, 1.0, -0.5)) == 1.0

    def test_diagonal_example(self):
        s = HermitianPD(DivMatrix.from_real(Algebra.REAL, [[2, 0], [0, 3]]))
        assert math.isclose(q_weight(s, (2, 1)), 12.0, rel_tol=1e-13)

    def test_constant_weight_gives_determinant_power(self):
        s = HermitianPD(DivMatrix.from_real(Algebra.REAL, [[2, 0], [0, 3]]))
        assert math.isclose(q_weight(s, (2, 2)), 36.0, rel_tol=1e-13)

    def test_accepts_minor_sequence(self):
        assert math.isclose(q_weight([2.0, 6.0], (2, 1)), 12.0, rel_tol=1e-13)

    @settings(max_examples=30, deadline=None)
    @given(
        beta=st.sampled_from([1, 2, 4]),
        seed=st.integers(0, 10_000),
        k1=st.floats(-1.5, 2.0),
        k2=st.floats(-1.5, 2.0),
        t1=st.floats(-1.5, 2.0),
        t2=st.floats(-1.5, 2.0),
    )
    def test_multiplicative_in_weight(self, beta, seed, k1, k2, t1, t2):
        algebra = Algebra.from_beta(beta)
        s = random_pd(algebra, 2, np.random.default_rng(seed))
        kappa = np.array([k1, k2])
        tau = np.array([t1, t2])
        lhs = ln_q_weight(s, kappa + tau)
        rhs = ln_q_weight(s, kappa) + ln_q_weight(s, tau)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_triangular_congruence(self, beta):
        algebra = Algebra.from_beta(beta)
        rng = np.random.default_rng(40 + beta)
        for _ in range(20):
            m = int(rng.integers(1, 4))
            s = random_pd(algebra, m, rng)
            b = random_upper(algebra, m, rng)
            c = HermitianPD(b.conj_transpose() @ b)
            kappa = rng.uniform(-1.5, 2.0, m)
            congr = HermitianPD(b.conj_transpose() @ s.as_matrix() @ b)
            lhs = ln_q_weight(congr, kappa)
            rhs = ln_q_weight(c, kappa) + ln_q_weight(s, kappa)
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))


class TestStiefelVolume:
    def test_classical_spheres(self):
        assert math.isclose(ln_stiefel_volume(1, 1, 1), math.log(2.0), rel_tol=1e-14)
        assert math.isclose(ln_stiefel_volume(1, 1, 2), math.log(2 * math.pi), rel_tol=1e-14)
        assert math.isclose(ln_stiefel_volume(1, 1, 3), math.log(4 * math.pi), rel_tol=1e-14)

    def test_requires_n_at_least_m(self):
        with pytest.raises(DomainError):
            ln_stiefel_volume(2, 3, 2)


class TestBetaFunctions:
    def test_unit_args(self):
        assert abs(ln_beta_star(1, 1, 1.0, 0.0, 1.0, 0.0)) < 1e-14
        assert abs(ln_beta_classic(4, 1, 1.0, (0.0,), 1.0, (0.0,))) < 1e-14

    def test_scalar_beta_identity(self):
        assert math.isclose(ln_beta_star(1, 1, 1.0, 0.0, 0.5, 0.0), math.log(2.0), rel_tol=1e-13)

    def test_classic_two_by_two(self):
        # Gamma_2^1[2]^2 / Gamma_2^1[4], via scalar gammas
        expected = 2 * math.log(math.pi / 2) - (
            0.5 * math.log(math.pi) + math.lgamma(4.0) + math.lgamma(3.5)
        )
        assert math.isclose(ln_beta_classic(1, 2, 2.0, None, 2.0, None), expected, rel_tol=1e-13)

    def test_m1_star_equals_classic(self):
        rng = np.random.default_rng(3)
        for beta in (1, 2, 4, 8):
            for _ in range(25):
                a, b = rng.uniform(0.3, 4.0, 2)
                k, t = rng.uniform(-0.2, 2.0, 2)
                if a + k <= 0 or b + t <= 0:
                    continue
                star = ln_beta_star(beta, 1, a, k, b, t)
                classic = ln_beta_classic(beta, 1, a, (k,), b, (t,))
                assert abs(star - classic) <= 1e-12 * max(1.0, abs(star))
