import math

import numpy as np
import pytest
from scipy import integrate, special, stats

from p2riesz import algebra as alg
from p2riesz.algebra import Algebra, DivMatrix, HermitianPD
from p2riesz.densities import (
    BetaRieszParams,
    KotzRieszParams,
    PearsonIIRieszParams,
    RieszParams,
    beta_riesz_logpdf,
    beta_riesz_logpdf_many,
    eigenvalues_logpdf,
    kotz_riesz_logpdf,
    pearson2riesz_logpdf,
    pearson2riesz_logpdf_many,
    riesz_logpdf,
    singular_values_logpdf,
)
from p2riesz.errors import DomainError, SupportError
from p2riesz.specfun import ln_mv_gamma

from helpers import random_divmatrix, random_pd

R = Algebra.REAL


def scalar_point(value, beta=1):
    data = np.zeros((1, 1, beta))
    data[0, 0, 0] = value
    return data


class TestRiesz:
    def test_rate_one_gamma_reduction(self):
        p = RieszParams(R, 1, a=1.0)
        assert math.isclose(riesz_logpdf(scalar_point(1.0), p), -1.0, rel_tol=1e-13)

    def test_weighted_scalar_is_shape_two_gamma(self):
        p = RieszParams(R, 1, a=1.0, kappa=(1.0,))
        expected = math.log(2 * math.exp(-2))
        assert math.isclose(riesz_logpdf(scalar_point(2.0), p), expected, rel_tol=1e-12)

    def test_kappa_zero_matches_wishart(self):
        # Riesz(a, 0, Xi) is Wishart with df = 2a and scale Xi / 2
        rng = np.random.default_rng(1)
        xi = random_pd(R, 3, rng)
        p = RieszParams(R, 3, a=4.0, xi=xi)
        ref = stats.wishart(df=8, scale=xi.data[:, :, 0] / 2.0)
        for _ in range(5):
            v = random_pd(R, 3, rng)
            assert math.isclose(
                riesz_logpdf(v, p), ref.logpdf(v.data[:, :, 0]), rel_tol=1e-10
            )

    def test_rejects_bad_domain(self):
        with pytest.raises(DomainError):
            RieszParams(R, 2, a=0.25)

    def test_support_error_on_non_pd(self):
        p = RieszParams(R, 2, a=3.0)
        bad = np.zeros((2, 2, 1))
        bad[0, 0, 0] = 1.0
        bad[1, 1, 0] = -1.0
        with pytest.raises(SupportError):
            riesz_logpdf(bad, p)


class TestKotzRiesz:
    def test_scalar_standard_value(self):
        p = KotzRieszParams(R, 1, 1)
        assert math.isclose(
            kotz_riesz_logpdf(scalar_point(0.0), p), -0.5 * math.log(math.pi), rel_tol=1e-13
        )

    def test_kappa_zero_matches_matrix_normal(self):
        # with beta = 1 the law is matrix normal, rowcov Theta, colcov Sigma / 2
        rng = np.random.default_rng(2)
        theta = random_pd(R, 3, rng)
        sigma = random_pd(R, 2, rng)
        mu = random_divmatrix(R, 3, 2, rng)
        p = KotzRieszParams(R, 3, 2, mu=mu, theta=theta, sigma=sigma)
        ref = stats.matrix_normal(
            mean=mu.data[:, :, 0],
            rowcov=theta.data[:, :, 0],
            colcov=sigma.data[:, :, 0] / 2.0,
        )
        for _ in range(5):
            y = mu.data + 0.4 * rng.standard_normal((3, 2, 1))
            assert math.isclose(
                kotz_riesz_logpdf(y, p), ref.logpdf(y[:, :, 0]), rel_tol=1e-10
            )

    def test_variance_convention_per_component(self):
        # log-density differences expose the per-component variance 1/(2 beta)
        for beta in (1, 2, 4):
            algebra = Algebra.from_beta(beta)
            p = KotzRieszParams(algebra, 1, 1)
            a = kotz_riesz_logpdf(scalar_point(0.0, beta), p)
            b = kotz_riesz_logpdf(scalar_point(0.5, beta), p)
            assert math.isclose(a - b, beta * 0.25, rel_tol=1e-12)

    def test_rank_deficient_weight_raises(self):
        p = KotzRieszParams(R, 2, 2, kappa=(1.0, 0.0))
        with pytest.raises(SupportError):
            kotz_riesz_logpdf(np.zeros((2, 2, 1)), p)


class TestPearsonIIRiesz:
    def test_uniform_scalar_case(self):
        p = PearsonIIRieszParams(R, 1, 1, nu=2.0)
        for r in (-0.9, 0.0, 0.5):
            assert math.isclose(
                pearson2riesz_logpdf(scalar_point(r), p), math.log(0.5), rel_tol=1e-13
            )

    @pytest.mark.parametrize("nu", [1.5, 3.0, 6.0])
    def test_classical_scalar_pearson(self, nu):
        p = PearsonIIRieszParams(R, 1, 1, nu=nu)
        c = math.lgamma((nu + 1) / 2) - math.lgamma(nu / 2) - 0.5 * math.log(math.pi)
        for r in (-0.7, 0.2, 0.6):
            expected = c + (nu / 2 - 1) * math.log1p(-r * r)
            assert math.isclose(pearson2riesz_logpdf(scalar_point(r), p), expected, rel_tol=1e-12)

    def test_quadrature_normalization_scalar(self):
        p = PearsonIIRieszParams(R, 1, 1, nu=3.0)
        val, _ = integrate.quad(
            lambda r: math.exp(pearson2riesz_logpdf(scalar_point(r), p)), -1, 1
        )
        assert abs(val - 1.0) <= 1e-10

    def test_tau_zero_reduction_closed_form(self):
        # with tau = 0, k = 0 the constant collapses to
        # Gamma((nu + mn) b/2) / (pi^(mn b/2) Gamma(nu b/2))
        rng = np.random.default_rng(3)
        for beta in (1, 2):
            algebra = Algebra.from_beta(beta)
            n, m = 3, 2
            p = PearsonIIRieszParams(algebra, n, m, nu=4.0)
            c = (
                special.gammaln((4.0 + n * m) * beta / 2.0)
                - (n * m * beta / 2.0) * math.log(math.pi)
                - special.gammaln(4.0 * beta / 2.0)
            )
            x = rng.standard_normal((n, m, beta)) * 0.2
            nrm = float(np.sum(x * x))
            expected = c + (4.0 * beta / 2.0 - 1.0) * math.log1p(-nrm)
            assert math.isclose(pearson2riesz_logpdf(x, p), expected, rel_tol=1e-10)

    def test_affine_consistency(self):
        # density of C equals standardized density at R plus the volume factor
        rng = np.random.default_rng(4)
        for beta in (1, 2, 4):
            algebra = Algebra.from_beta(beta)
            n, m = 3, 2
            theta = random_pd(algebra, n, rng)
            sigma = random_pd(algebra, m, rng)
            mu = random_divmatrix(algebra, n, m, rng)
            rho = 1.7
            general = PearsonIIRieszParams(
                algebra, n, m, nu=3.0, k=0.25, tau=(1.0, 0.5), rho=rho,
                mu=mu, theta=theta, sigma=sigma,
            )
            std = PearsonIIRieszParams(algebra, n, m, nu=3.0, k=0.25, tau=(1.0, 0.5))
            r = rng.standard_normal((n, m, beta)) * 0.1
            c = alg.mat_mul(
                alg.mat_mul(alg.mat_conj_t(theta.chol.data), r, beta),
                sigma.chol.data, beta,
            ) / math.sqrt(rho) + mu.data
            lhs = pearson2riesz_logpdf(c, general)
            rhs = (
                pearson2riesz_logpdf(r, std)
                + (m * n * beta / 2.0) * math.log(rho)
                - (n * beta / 2.0) * sigma.ln_det()
                - (m * beta / 2.0) * theta.ln_det()
            )
            assert math.isclose(lhs, rhs, rel_tol=1e-10)

    def test_support_boundary(self):
        p = PearsonIIRieszParams(R, 1, 1, nu=2.0)
        with pytest.raises(SupportError):
            pearson2riesz_logpdf(scalar_point(1.01), p)

    def test_batch_returns_neginf_outside(self):
        p = PearsonIIRieszParams(R, 1, 1, nu=2.0)
        pts = np.array([0.2, 1.5]).reshape(2, 1, 1, 1)
        out = pearson2riesz_logpdf_many(pts, p)
        assert np.isfinite(out[0]) and out[1] == -np.inf

    def test_octonion_scalar_profile(self):
        # m = 1 octonion density uses only component norms
        p = PearsonIIRieszParams(Algebra.OCTONION, 1, 1, nu=3.0, k=0.5)
        x = np.zeros((1, 1, 8))
        x[0, 0, :2] = (0.3, 0.4)
        beta = 8
        c = (
            special.gammaln((3.0 + 1) * beta / 2.0 + 0.5)
            - (beta / 2.0) * math.log(math.pi)
            - special.gammaln(3.0 * beta / 2.0 + 0.5)
        )
        expected = c + (3.0 * beta / 2.0 + 0.5 - 1.0) * math.log1p(-0.25)
        assert math.isclose(pearson2riesz_logpdf(x, p), expected, rel_tol=1e-12)

    def test_octonion_matrix_rejected(self):
        with pytest.raises(DomainError):
            PearsonIIRieszParams(Algebra.OCTONION, 2, 2, nu=3.0)


class TestBetaRiesz:
    def test_scalar_half_one_beta(self):
        p = BetaRieszParams(R, 1, 1, nu=2.0)
        assert abs(beta_riesz_logpdf(scalar_point(0.25), p)) <= 1e-12

    @pytest.mark.parametrize(
        "beta,n,t,nu,k",
        [(1, 3, 1.0, 4.0, 0.5), (2, 2, 2.0, 3.0, 0.0), (4, 2, 1.5, 2.5, 0.25), (8, 1, 1.0, 3.0, 0.0)],
    )
    def test_scalar_beta_reduction(self, beta, n, t, nu, k):
        algebra = Algebra.from_beta(beta)
        p = BetaRieszParams(algebra, n, 1, nu=nu, k=k, tau=(t,))
        ref = stats.beta(n * beta / 2.0 + t, nu * beta / 2.0 + k)
        for b in (0.15, 0.5, 0.85):
            assert math.isclose(
                beta_riesz_logpdf(scalar_point(b, beta), p), ref.logpdf(b), rel_tol=1e-10
            )

    def test_tau_zero_reduction_closed_form(self):
        rng = np.random.default_rng(6)
        n, m, nu = 3, 2, 4.0
        p = BetaRieszParams(R, n, m, nu=nu)
        c = (
            special.gammaln((nu + n * m) / 2.0)
            - ln_mv_gamma(1, m, n / 2.0)
            - special.gammaln(nu / 2.0)
        )
        for _ in range(5):
            b = random_pd(R, m, rng)
            scale = 0.2 / np.trace(b.data[:, :, 0])
            b = HermitianPD(b.data * scale, R)
            expected = (
                c
                + ((n - m + 1) / 2.0 - 1.0) * b.ln_det()
                + (nu / 2.0 - 1.0) * math.log(1 - np.trace(b.data[:, :, 0]))
            )
            assert math.isclose(beta_riesz_logpdf(b, p), expected, rel_tol=1e-10)

    def test_support_errors(self):
        p = BetaRieszParams(R, 2, 2, nu=3.0)
        with pytest.raises(SupportError):
            beta_riesz_logpdf(np.eye(2)[:, :, None] * 0.8, p)  # trace 1.6 > 1

    def test_needs_n_geq_m(self):
        with pytest.raises(DomainError):
            BetaRieszParams(R, 1, 2, nu=3.0)


class TestSpectralDensities:
    def test_m1_uniform_case(self):
        assert abs(singular_values_logpdf([0.3], 2.0, 0.0, (0,), 1, 1)) <= 1e-12

    def test_m1_matches_scalar_beta(self):
        for t in (0, 1, 2):
            ref = stats.beta(1.5 + t, 2.5)
            for lam in (0.2, 0.6):
                ours = eigenvalues_logpdf([lam], 4.0, 0.5, (t,), 3, 1)
                assert math.isclose(ours, ref.logpdf(lam), rel_tol=1e-10)

    def test_sv_eigen_consistency(self):
        rng = np.random.default_rng(8)
        for _ in range(25):
            d = np.sort(rng.uniform(0.05, 0.7, 2))[::-1]
            if d[0] - d[1] < 1e-3 or (d**2).sum() >= 0.98:
                continue
            sv = singular_values_logpdf(d, 4.0, 0.5, (2, 1), 3, 1)
            ev = eigenvalues_logpdf(d**2, 4.0, 0.5, (2, 1), 3, 1)
            assert abs(sv - ev - np.log(2 * d).sum()) <= 1e-10

    def test_support_validation(self):
        with pytest.raises(SupportError):
            singular_values_logpdf([0.5, 0.5], 3.0, 0.0, (0,), 2, 1)  # not decreasing
        with pytest.raises(SupportError):
            singular_values_logpdf([0.9, 0.8], 3.0, 0.0, (0,), 2, 1)  # sum of squares > 1
        with pytest.raises(SupportError):
            eigenvalues_logpdf([0.7, 0.4], 3.0, 0.0, (0,), 2, 1)  # sum > 1

    def test_param_validation(self):
        with pytest.raises(DomainError):
            eigenvalues_logpdf([0.3], 3.0, 0.0, (1, 1), 2, 1)  # too many parts for m = 1
        with pytest.raises(DomainError):
            eigenvalues_logpdf([0.3, 0.2], 3.0, 0.0, (0,), 1, 1)  # n < m


class TestBatchEvaluators:
    def test_batch_agrees_with_single(self):
        rng = np.random.default_rng(9)
        p = BetaRieszParams(R, 3, 2, nu=3.0, k=0.5, tau=(1.0, 0.0))
        pts = []
        for _ in range(10):
            b = random_pd(R, 2, rng)
            pts.append(b.data * (0.2 / np.trace(b.data[:, :, 0])))
        batch = beta_riesz_logpdf_many(np.stack(pts), p)
        singles = [beta_riesz_logpdf(HermitianPD(x, R), p) for x in pts]
        assert np.allclose(batch, singles, rtol=1e-13)
