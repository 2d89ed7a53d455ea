"""Scalar special functions for the division-algebra distribution family.

Everything gamma-like is returned in log space: the constants of the
matrix densities involve factors such as Gamma((nu + mn) beta / 2 + ...)
which overflow double precision long before the parameter ranges of
interest are exhausted.

Conventions:

* ``ln_mv_gamma(beta, m, a, kappa)`` is the weighted multivariate gamma
  log Gamma_m^beta[a, kappa]
      = (m(m-1)beta/4) log pi + sum_i log Gamma(a + k_i - (i-1) beta/2),
  the unweighted Gamma_m^beta[a] being the kappa = 0 case.
* ``gen_pochhammer`` is the product prod_i (a - (i-1) beta/2)_{k_i}; for
  weights where both gammas exist it equals the gamma ratio
  exp(ln_mv_gamma(a, kappa) - ln_mv_gamma(a, 0)).
* ``q_weight`` is the highest weight vector: the product of powers of
  leading principal minors prod_i |A_i|^{k_i - k_{i+1}} with
  k_{m+1} := 0, so weights may be arbitrary reals.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from .algebra import Algebra, DivMatrix, HermitianPD
from .errors import DomainError

__all__ = [
    "as_weight",
    "ln_mv_gamma",
    "gen_pochhammer",
    "q_weight",
    "ln_q_weight",
    "ln_stiefel_volume",
    "ln_beta_star",
    "ln_beta_classic",
]

LN_PI = math.log(math.pi)


def _check_beta(beta: int) -> int:
    Algebra.from_beta(beta)
    return int(beta)


def as_weight(kappa, m: int) -> np.ndarray:
    """Coerce a weight to a length-m float vector (scalars broadcast at m=1)."""
    if kappa is None:
        return np.zeros(m)
    arr = np.atleast_1d(np.asarray(kappa, dtype=float))
    if arr.ndim != 1 or arr.size != m:
        raise DomainError(f"weight must have {m} components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("weight components must be finite")
    return arr


def _gamma_args(beta: int, m: int, a: float, kappa) -> np.ndarray:
    k = as_weight(kappa, m)
    args = a + k - np.arange(m) * (beta / 2.0)
    bad = np.nonzero(args <= 0.0)[0]
    if bad.size:
        i = int(bad[0])
        raise DomainError(
            f"gamma argument a + k_i - (i-1) beta/2 = {args[i]:g} is not positive "
            f"at index i = {i + 1} (a = {a:g}, beta = {beta})"
        )
    return args


def ln_mv_gamma(beta: int, m: int, a: float, kappa=None) -> float:
    """Log of the weighted multivariate gamma Gamma_m^beta[a, kappa].

    Requires a + k_i - (i-1) beta/2 > 0 for every i; raises DomainError
    naming the first failing index otherwise.
    """
    beta = _check_beta(beta)
    if m < 1:
        raise DomainError("m must be at least 1")
    args = _gamma_args(beta, m, a, kappa)
    return float(m * (m - 1) * beta / 4.0 * LN_PI + special.gammaln(args).sum())


def gen_pochhammer(beta: int, m: int, a: float, kappa) -> float:
    """Generalized Pochhammer symbol prod_i (a - (i-1) beta/2)_{k_i}.

    Integer weights use the finite product; non-integer weights fall
    back to the gamma ratio, and a pole there raises DomainError.
    """
    beta = _check_beta(beta)
    k = as_weight(kappa, m)
    base = a - np.arange(m) * (beta / 2.0)
    vals = special.poch(base, k)
    if not np.all(np.isfinite(vals)):
        i = int(np.nonzero(~np.isfinite(vals))[0][0])
        raise DomainError(
            f"Pochhammer factor ({base[i]:g})_{k[i]:g} hits a gamma pole"
        )
    return float(np.prod(vals))


def _minors_of(s) -> np.ndarray:
    if isinstance(s, (HermitianPD, DivMatrix)):
        if isinstance(s, DivMatrix):
            s = HermitianPD(s)
        return s.principal_minors()
    minors = np.atleast_1d(np.asarray(s, dtype=float))
    if minors.ndim != 1 or np.any(minors <= 0.0):
        raise DomainError("principal minors must be a sequence of positive reals")
    return minors


def ln_q_weight(s, kappa) -> float:
    """Log of the highest weight vector given a matrix or its minors."""
    minors = _minors_of(s)
    k = as_weight(kappa, minors.size)
    diffs = k - np.append(k[1:], 0.0)
    return float(np.dot(diffs, np.log(minors)))


def q_weight(s, kappa) -> float:
    """Highest weight vector q_kappa: prod_i |A_i|^{k_i - k_{i+1}}, k_{m+1} = 0."""
    return math.exp(ln_q_weight(s, kappa))


def ln_stiefel_volume(beta: int, m: int, n: int) -> float:
    """Log volume of the Stiefel manifold of n x m frames over the algebra.

    Vol = 2^m pi^(m n beta / 2) / Gamma_m^beta[n beta / 2], for n >= m.
    """
    beta = _check_beta(beta)
    if not 1 <= m <= n:
        raise DomainError(f"need n >= m >= 1, got n = {n}, m = {m}")
    return float(
        m * math.log(2.0)
        + (m * n * beta / 2.0) * LN_PI
        - ln_mv_gamma(beta, m, n * beta / 2.0)
    )


def ln_beta_star(beta: int, m: int, a: float, k: float, b: float, tau) -> float:
    """Log of the trace-form matrix beta function.

    B*_m[a, k; b, tau] = Gamma_1[a + k] Gamma_m^beta[b, tau]
                         / Gamma_1[a + m b + k + sum(tau)].
    """
    beta = _check_beta(beta)
    t = as_weight(tau, m)
    if a + k <= 0.0:
        raise DomainError(f"a + k = {a + k:g} must be positive")
    top = special.gammaln(a + k) + ln_mv_gamma(beta, m, b, t)
    tail_arg = a + m * b + k + t.sum()
    if tail_arg <= 0.0:
        raise DomainError(f"a + m b + k + sum(tau) = {tail_arg:g} must be positive")
    return float(top - special.gammaln(tail_arg))


def ln_beta_classic(beta: int, m: int, a: float, kappa, b: float, tau) -> float:
    """Log of the determinant-form matrix beta function.

    B_m^beta[a, kappa; b, tau] = Gamma_m^beta[a, kappa] Gamma_m^beta[b, tau]
                                 / Gamma_m^beta[a + b, kappa + tau].
    """
    beta = _check_beta(beta)
    ka = as_weight(kappa, m)
    ta = as_weight(tau, m)
    return float(
        ln_mv_gamma(beta, m, a, ka)
        + ln_mv_gamma(beta, m, b, ta)
        - ln_mv_gamma(beta, m, a + b, ka + ta)
    )
