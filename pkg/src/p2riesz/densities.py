"""Log-densities of the Pearson type II-Riesz family and its relatives.

All evaluators return natural-log density values; exponentiation is the
caller's choice.  Single-point functions raise ``SupportError`` outside
the support of the distribution (never a silent -inf); the ``*_many``
batch variants evaluate component arrays with leading batch axes and
return -inf for out-of-support points, which is what the Monte Carlo
normalization checks integrate.

Shape conventions follow (n rows, m columns) with n >= m.  Parameter
records are frozen; their normalizing constants are computed once and
cached.  Octonion entries are accepted only on the m = 1 path with no
row scale matrix, where every formula reduces to norms of components.

The general Pearson II-Riesz constant is the one obtained by pushing the
standardized density through the affine change of variables: with
W = u(Theta)^{-*} (C - mu) u(Sigma)^{-1} the density is

    c0 * rho^{m n beta / 2} * |Sigma|^{-n beta/2} |Theta|^{-m beta/2}
       * (1 - rho tr[...])^{nu beta/2 + k - 1} * q_tau(rho W* W),

and the weight factor absorbs a further rho^{sum tau} by homogeneity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special

from . import algebra as alg
from .algebra import Algebra, DivMatrix, HermitianPD
from .errors import DomainError, NotPositiveDefiniteError, SupportError
from .jack import Partition, as_partition, jack_C, jack_C_identity
from .specfun import LN_PI, as_weight, ln_mv_gamma, ln_beta_star

__all__ = [
    "RieszParams",
    "KotzRieszParams",
    "PearsonIIRieszParams",
    "BetaRieszParams",
    "riesz_logpdf",
    "riesz_logpdf_many",
    "kotz_riesz_logpdf",
    "kotz_riesz_logpdf_many",
    "pearson2riesz_logpdf",
    "pearson2riesz_logpdf_many",
    "beta_riesz_logpdf",
    "beta_riesz_logpdf_many",
    "singular_values_logpdf",
    "eigenvalues_logpdf",
]


def _weight_tuple(w, m: int) -> tuple:
    return tuple(as_weight(w, m))


def _check_pd_param(name: str, value, algebra: Algebra, dim: int):
    if value is None:
        return None
    if not isinstance(value, HermitianPD):
        raise TypeError(f"{name} must be a HermitianPD or None")
    if value.algebra is not algebra:
        raise DomainError(f"{name} must live over the same algebra")
    if value.dim != dim:
        raise DomainError(f"{name} must be {dim} x {dim}, got {value.dim}")
    return value


def _check_octonion_gate(algebra: Algebra, m: int, theta) -> None:
    if algebra.is_associative:
        return
    if m != 1 or theta is not None:
        raise DomainError(
            "octonion densities are available only for m = 1 with no row scale"
        )


def _ln_q(ln_minors: np.ndarray, weight: tuple) -> np.ndarray:
    """Batched log highest-weight factor from log principal minors."""
    k = np.asarray(weight)
    diffs = k - np.append(k[1:], 0.0)
    return ln_minors @ diffs


def _ln_det_or_zero(s: HermitianPD | None) -> float:
    return 0.0 if s is None else s.ln_det()


def _ln_q_or_zero(s: HermitianPD | None, weight: tuple) -> float:
    if s is None or not any(weight):
        return 0.0
    return float(_ln_q(s.ln_minors, weight))


def _standardize(data: np.ndarray, mu, theta, sigma, beta: int) -> np.ndarray:
    """Map C to u(Theta)^{-*} (C - mu) u(Sigma)^{-1}, batch-aware."""
    w = data if mu is None else data - mu.data
    if theta is not None:
        w = alg.solve_conjt_lower(theta.chol.data, w, beta)
    if sigma is not None:
        w = alg.solve_upper_right(w, sigma.chol.data, beta)
    return w


def _gram_ln_minors(w: np.ndarray, beta: int):
    """Log principal minors of W* W and a validity mask."""
    if w.shape[-2] == 1:
        nrm = alg.frob_sq(w)
        ok = nrm > 0.0
        safe = np.where(ok, nrm, 1.0)
        return np.log(safe)[..., None], ok
    gram = alg.mat_mul(alg.mat_conj_t(w), w, beta)
    t, ok = alg.chol_upper(gram, beta)
    return alg.ln_minors_from_chol(t), ok


def _as_point(x, algebra: Algebra, shape: tuple, what: str) -> np.ndarray:
    if isinstance(x, HermitianPD):
        x = x.as_matrix()
    if isinstance(x, DivMatrix):
        if x.algebra is not algebra:
            raise DomainError(f"{what} must live over the same algebra")
        data = x.data
    else:
        data = np.asarray(x, dtype=float)
    if data.shape != shape + (algebra.beta,):
        raise DomainError(
            f"{what} must have shape {shape + (algebra.beta,)}, got {data.shape}"
        )
    return data


# ---------------------------------------------------------------------------
# Riesz type I.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RieszParams:
    """Cone-valued Riesz distribution: shape a, weight kappa, scale xi."""

    algebra: Algebra
    m: int
    a: float
    kappa: tuple = None
    xi: HermitianPD | None = None

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("m must be at least 1")
        _check_octonion_gate(self.algebra, self.m, None)
        object.__setattr__(self, "kappa", _weight_tuple(self.kappa, self.m))
        beta = self.algebra.beta
        args = self.a + np.asarray(self.kappa) - np.arange(self.m) * beta / 2.0
        if np.any(args <= 0.0):
            i = int(np.nonzero(args <= 0.0)[0][0])
            raise DomainError(
                f"need a + k_i - (i-1) beta/2 > 0; fails at index {i + 1}"
            )
        _check_pd_param("xi", self.xi, self.algebra, self.m)

    @cached_property
    def _ln_const(self) -> float:
        beta = self.algebra.beta
        return (
            (self.a * self.m + sum(self.kappa)) * math.log(beta)
            - ln_mv_gamma(beta, self.m, self.a, self.kappa)
            - self.a * _ln_det_or_zero(self.xi)
            - _ln_q_or_zero(self.xi, self.kappa)
        )


def riesz_logpdf_many(data: np.ndarray, p: RieszParams) -> np.ndarray:
    """Riesz log-density on batched Hermitian component arrays."""
    beta = p.algebra.beta
    t, ok = alg.chol_upper(data, beta)
    ln_minors = alg.ln_minors_from_chol(t)
    if p.xi is None:
        trace = np.sum(alg.diag_real(data), axis=-1)
    else:
        z = alg.solve_conjt_lower(p.xi.chol.data, alg.mat_conj_t(t), beta)
        trace = alg.frob_sq(z)
    ln_det = ln_minors[..., -1]
    out = (
        p._ln_const
        - beta * trace
        + (p.a - (p.m - 1) * beta / 2.0 - 1.0) * ln_det
        + _ln_q(ln_minors, p.kappa)
    )
    return np.where(ok, out, -np.inf)


def riesz_logpdf(v, p: RieszParams) -> float:
    """Log-density of the Riesz type I distribution at a PD matrix."""
    data = _as_point(v, p.algebra, (p.m, p.m), "V")
    out = riesz_logpdf_many(data[None], p)[0]
    if not np.isfinite(out):
        raise SupportError("V is not positive definite")
    return float(out)


# ---------------------------------------------------------------------------
# Kotz-Riesz type I.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KotzRieszParams:
    """Gaussian-kernel matrix law with a highest-weight factor."""

    algebra: Algebra
    n: int
    m: int
    kappa: tuple = None
    mu: DivMatrix | None = None
    theta: HermitianPD | None = None
    sigma: HermitianPD | None = None

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise DomainError("need n >= m >= 1")
        _check_octonion_gate(self.algebra, self.m, self.theta)
        object.__setattr__(self, "kappa", _weight_tuple(self.kappa, self.m))
        beta = self.algebra.beta
        args = (
            self.n * beta / 2.0
            + np.asarray(self.kappa)
            - np.arange(self.m) * beta / 2.0
        )
        if np.any(args <= 0.0):
            raise DomainError("need n beta/2 + k_i - (i-1) beta/2 > 0 for all i")
        _check_pd_param("theta", self.theta, self.algebra, self.n)
        _check_pd_param("sigma", self.sigma, self.algebra, self.m)
        if self.mu is not None:
            if not isinstance(self.mu, DivMatrix):
                raise TypeError("mu must be a DivMatrix or None")
            if self.mu.algebra is not self.algebra or self.mu.shape != (self.n, self.m):
                raise DomainError(f"mu must be {self.n} x {self.m} over the algebra")

    @cached_property
    def _ln_const(self) -> float:
        beta = self.algebra.beta
        half = self.m * self.n * beta / 2.0
        return (
            (half + sum(self.kappa)) * math.log(beta)
            + ln_mv_gamma(beta, self.m, self.n * beta / 2.0)
            - half * LN_PI
            - ln_mv_gamma(beta, self.m, self.n * beta / 2.0, self.kappa)
            - (self.n * beta / 2.0) * _ln_det_or_zero(self.sigma)
            - (self.m * beta / 2.0) * _ln_det_or_zero(self.theta)
        )


def kotz_riesz_logpdf_many(data: np.ndarray, p: KotzRieszParams) -> np.ndarray:
    beta = p.algebra.beta
    w = _standardize(data, p.mu, p.theta, p.sigma, beta)
    out = p._ln_const - beta * alg.frob_sq(w)
    if any(p.kappa):
        ln_minors, ok = _gram_ln_minors(w, beta)
        out = np.where(ok, out + _ln_q(ln_minors, p.kappa), -np.inf)
    return out


def kotz_riesz_logpdf(y, p: KotzRieszParams) -> float:
    """Log-density of the Kotz-Riesz type I distribution at an n x m matrix."""
    data = _as_point(y, p.algebra, (p.n, p.m), "Y")
    out = kotz_riesz_logpdf_many(data[None], p)[0]
    if not np.isfinite(out):
        raise SupportError("Y - mu is rank deficient; the weight factor vanishes")
    return float(out)


# ---------------------------------------------------------------------------
# Pearson type II-Riesz.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PearsonIIRieszParams:
    """Compact-support matrix law with weight tau and radius scale rho."""

    algebra: Algebra
    n: int
    m: int
    nu: float
    k: float = 0.0
    tau: tuple = None
    rho: float = 1.0
    mu: DivMatrix | None = None
    theta: HermitianPD | None = None
    sigma: HermitianPD | None = None

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise DomainError("need n >= m >= 1")
        _check_octonion_gate(self.algebra, self.m, self.theta)
        object.__setattr__(self, "tau", _weight_tuple(self.tau, self.m))
        beta = self.algebra.beta
        if self.nu * beta / 2.0 + self.k <= 0.0:
            raise DomainError("need nu beta/2 + k > 0")
        args = (
            self.n * beta / 2.0 + np.asarray(self.tau) - np.arange(self.m) * beta / 2.0
        )
        if np.any(args <= 0.0):
            raise DomainError("need n beta/2 + t_i - (i-1) beta/2 > 0 for all i")
        if (self.nu + self.m * self.n) * beta / 2.0 + self.k + sum(self.tau) <= 0.0:
            raise DomainError("need (nu + mn) beta/2 + k + sum(tau) > 0")
        if not self.rho > 0.0:
            raise DomainError("rho must be positive")
        _check_pd_param("theta", self.theta, self.algebra, self.n)
        _check_pd_param("sigma", self.sigma, self.algebra, self.m)
        if self.mu is not None:
            if not isinstance(self.mu, DivMatrix):
                raise TypeError("mu must be a DivMatrix or None")
            if self.mu.algebra is not self.algebra or self.mu.shape != (self.n, self.m):
                raise DomainError(f"mu must be {self.n} x {self.m} over the algebra")

    @property
    def _shape_exponent(self) -> float:
        return self.nu * self.algebra.beta / 2.0 + self.k - 1.0

    @cached_property
    def _ln_const(self) -> float:
        beta = self.algebra.beta
        half = self.m * self.n * beta / 2.0
        return (
            ln_mv_gamma(beta, self.m, self.n * beta / 2.0)
            + special.gammaln((self.nu + self.m * self.n) * beta / 2.0 + self.k + sum(self.tau))
            + half * math.log(self.rho)
            - half * LN_PI
            - ln_mv_gamma(beta, self.m, self.n * beta / 2.0, self.tau)
            - special.gammaln(self.nu * beta / 2.0 + self.k)
            - (self.n * beta / 2.0) * _ln_det_or_zero(self.sigma)
            - (self.m * beta / 2.0) * _ln_det_or_zero(self.theta)
        )


def pearson2riesz_logpdf_many(data: np.ndarray, p: PearsonIIRieszParams) -> np.ndarray:
    beta = p.algebra.beta
    w = _standardize(data, p.mu, p.theta, p.sigma, beta)
    g = 1.0 - p.rho * alg.frob_sq(w)
    inside = g > 0.0
    out = np.where(
        inside,
        p._ln_const + p._shape_exponent * np.log(np.where(inside, g, 1.0)),
        -np.inf,
    )
    if any(p.tau):
        ln_minors, ok = _gram_ln_minors(w, beta)
        lnq = _ln_q(ln_minors, p.tau) + sum(p.tau) * math.log(p.rho)
        out = np.where(ok, out + lnq, -np.inf)
    return out


def pearson2riesz_logpdf(c, p: PearsonIIRieszParams) -> float:
    """Log-density of the Pearson II-Riesz distribution at an n x m matrix.

    Raises SupportError when 1 - rho tr[...] <= 0 or when the weight
    factor hits a rank-deficient Gram matrix.
    """
    data = _as_point(c, p.algebra, (p.n, p.m), "C")
    out = pearson2riesz_logpdf_many(data[None], p)[0]
    if not np.isfinite(out):
        raise SupportError("C lies outside the support of the distribution")
    return float(out)


# ---------------------------------------------------------------------------
# Beta-Riesz type I.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BetaRieszParams:
    """Law of B = R* R for a Pearson II-Riesz matrix R."""

    algebra: Algebra
    n: int
    m: int
    nu: float
    k: float = 0.0
    tau: tuple = None
    rho: float = 1.0
    sigma: HermitianPD | None = None

    def __post_init__(self):
        if not 1 <= self.m <= self.n:
            raise DomainError("need n >= m >= 1")
        _check_octonion_gate(self.algebra, self.m, None)
        object.__setattr__(self, "tau", _weight_tuple(self.tau, self.m))
        beta = self.algebra.beta
        if self.nu * beta / 2.0 + self.k <= 0.0:
            raise DomainError("need nu beta/2 + k > 0")
        args = (
            self.n * beta / 2.0 + np.asarray(self.tau) - np.arange(self.m) * beta / 2.0
        )
        if np.any(args <= 0.0):
            raise DomainError("need n beta/2 + t_i - (i-1) beta/2 > 0 for all i")
        if (self.nu + self.m * self.n) * beta / 2.0 + self.k + sum(self.tau) <= 0.0:
            raise DomainError("need (nu + mn) beta/2 + k + sum(tau) > 0")
        if not self.rho > 0.0:
            raise DomainError("rho must be positive")
        _check_pd_param("sigma", self.sigma, self.algebra, self.m)

    @cached_property
    def _ln_const(self) -> float:
        beta = self.algebra.beta
        return (
            special.gammaln((self.nu + self.m * self.n) * beta / 2.0 + self.k + sum(self.tau))
            + (self.m * self.n * beta / 2.0 + sum(self.tau)) * math.log(self.rho)
            - ln_mv_gamma(beta, self.m, self.n * beta / 2.0, self.tau)
            - special.gammaln(self.nu * beta / 2.0 + self.k)
            - (self.n * beta / 2.0) * _ln_det_or_zero(self.sigma)
            - _ln_q_or_zero(self.sigma, self.tau)
        )


def beta_riesz_logpdf_many(data: np.ndarray, p: BetaRieszParams) -> np.ndarray:
    beta = p.algebra.beta
    t, ok = alg.chol_upper(data, beta)
    ln_minors = alg.ln_minors_from_chol(t)
    if p.sigma is None:
        trace = np.sum(alg.diag_real(data), axis=-1)
    else:
        z = alg.solve_conjt_lower(p.sigma.chol.data, alg.mat_conj_t(t), beta)
        trace = alg.frob_sq(z)
    g = 1.0 - p.rho * trace
    ok = ok & (g > 0.0)
    out = (
        p._ln_const
        + ((p.n - p.m + 1) * beta / 2.0 - 1.0) * ln_minors[..., -1]
        + (p.nu * beta / 2.0 + p.k - 1.0) * np.log(np.where(ok, g, 1.0))
        + _ln_q(ln_minors, p.tau)
    )
    return np.where(ok, out, -np.inf)


def beta_riesz_logpdf(b, p: BetaRieszParams) -> float:
    """Log-density of the beta-Riesz type I distribution at a PD matrix."""
    data = _as_point(b, p.algebra, (p.m, p.m), "B")
    out = beta_riesz_logpdf_many(data[None], p)[0]
    if not np.isfinite(out):
        raise SupportError("B is outside the support (not PD or trace too large)")
    return float(out)


# ---------------------------------------------------------------------------
# Spectral densities (standardized case, rho = 1, identity scales).
# ---------------------------------------------------------------------------


def _check_spectrum(values, m_expected: int | None, name: str) -> np.ndarray:
    x = np.atleast_1d(np.asarray(values, dtype=float))
    if x.ndim != 1 or x.size < 1:
        raise DomainError(f"{name} must be a 1-D sequence")
    if m_expected is not None and x.size != m_expected:
        raise DomainError(f"{name} must have length {m_expected}")
    if np.any(x <= 0.0) or np.any(x >= 1.0):
        raise SupportError(f"{name} entries must lie strictly inside (0, 1)")
    if np.any(np.diff(x) >= 0.0):
        raise SupportError(f"{name} entries must be strictly decreasing")
    return x


def _spectral_ln_const(m: int, nu: float, k: float, tau: Partition, n: int, beta: int) -> float:
    algebra = Algebra.from_beta(beta)
    if beta not in (1, 2, 4):
        raise DomainError("spectral densities support beta in {1, 2, 4}")
    if n < m:
        raise DomainError("need n >= m")
    if len(tau) > m:
        raise DomainError("tau must have at most m parts")
    exponent = beta * m * m / 2.0 + algebra.spectral_pi_exponent(m)
    return (
        exponent * LN_PI
        - ln_mv_gamma(beta, m, beta * m / 2.0)
        - ln_beta_star(
            beta, m, nu * beta / 2.0, k, n * beta / 2.0, tuple(tau.parts) + (0,) * (m - len(tau))
        )
    )


def singular_values_logpdf(delta, nu: float, k: float, tau, n: int, beta: int) -> float:
    """Joint log-density of the m singular values, standardized case.

    Support: 1 > delta_1 > ... > delta_m > 0 with sum delta_i^2 < 1.
    """
    tau = as_partition(tau)
    d = _check_spectrum(delta, None, "delta")
    m = d.size
    sq = d * d
    rest = 1.0 - sq.sum()
    if rest <= 0.0:
        raise SupportError("need sum(delta_i^2) < 1")
    out = (
        m * math.log(2.0)
        + _spectral_ln_const(m, nu, k, tau, n, beta)
        + (beta * (n - m + 1) - 1.0) * np.log(d).sum()
        + (nu * beta / 2.0 + k - 1.0) * math.log(rest)
    )
    for i in range(m):
        for j in range(i + 1, m):
            out += beta * math.log(sq[i] - sq[j])
    if tau.degree:
        out += math.log(jack_C(tau, sq, beta)) - math.log(jack_C_identity(tau, m, beta))
    return float(out)


def eigenvalues_logpdf(lam, nu: float, k: float, tau, n: int, beta: int) -> float:
    """Joint log-density of the m eigenvalues of B = R* R, standardized case.

    Support: 1 > lambda_1 > ... > lambda_m > 0 with sum lambda_i < 1.
    """
    tau = as_partition(tau)
    x = _check_spectrum(lam, None, "lambda")
    m = x.size
    rest = 1.0 - x.sum()
    if rest <= 0.0:
        raise SupportError("need sum(lambda_i) < 1")
    out = (
        _spectral_ln_const(m, nu, k, tau, n, beta)
        + ((n - m + 1) * beta / 2.0 - 1.0) * np.log(x).sum()
        + (nu * beta / 2.0 + k - 1.0) * math.log(rest)
    )
    for i in range(m):
        for j in range(i + 1, m):
            out += beta * math.log(x[i] - x[j])
    if tau.degree:
        out += math.log(jack_C(tau, x, beta)) - math.log(jack_C_identity(tau, m, beta))
    return float(out)
