"""Samplers for every distribution in the family.

All generation is driven by a caller-supplied ``numpy.random.Generator``
(see ``default_rng``); a fixed seed reproduces the sample stream exactly
within one build.  Draw order is part of the contract of each sampler
and is documented in its docstring, so construction-level tests can
reason about the stream.

The cone samplers use a Bartlett-type triangular construction: the
upper factor T of V = T* T has independent entries with

    t_ii^2 ~ Gamma(shape a + k_i - (i-1) beta/2, rate beta),
    t_ij   ~ Normal(0, 1/(2 beta)) per real component (i < j),

which reproduces the Riesz density (the m = 1 and moment oracles in the
test suite re-verify this).  Stiefel frames come from Gram-Schmidt
applied to standard normal matrices, with positive diagonal R factors,
which yields the normalized invariant measure.

Passing ``size=None`` returns a single wrapped draw; an integer size
returns the raw component array with a leading batch axis.
"""

from __future__ import annotations

import numpy as np

from . import algebra as alg
from .algebra import Algebra, DivMatrix, HermitianPD
from .densities import (
    BetaRieszParams,
    KotzRieszParams,
    PearsonIIRieszParams,
    RieszParams,
)
from .errors import UnsupportedAlgebraError

__all__ = [
    "default_rng",
    "sample_riesz_factor",
    "sample_riesz_matrix",
    "sample_stiefel",
    "sample_kotz_riesz",
    "sample_pearson2riesz",
    "sample_beta_riesz",
]

DEFAULT_SEED = 20240802


def default_rng(seed: int | None = DEFAULT_SEED) -> np.random.Generator:
    """Deterministic random stream (PCG64) used by the CLI and checks."""
    return np.random.default_rng(seed)


def _require_associative(algebra: Algebra) -> None:
    if not algebra.is_associative:
        raise UnsupportedAlgebraError("samplers are not provided for octonions")


def _batched(size):
    return (1 if size is None else int(size),)


def sample_riesz_factor(rng, p: RieszParams, size=None) -> np.ndarray:
    """Bartlett factor T (upper triangular) of a standardized Riesz draw.

    Draw order: the m squared diagonals (one Gamma call per index), then
    the off-diagonal normal block.  The scale matrix xi of ``p`` is not
    applied here.
    """
    _require_associative(p.algebra)
    beta = p.algebra.beta
    m = p.m
    (nb,) = _batched(size)
    t = np.zeros((nb, m, m, beta))
    for i in range(m):
        shape = p.a + p.kappa[i] - i * beta / 2.0
        t[:, i, i, 0] = np.sqrt(rng.gamma(shape, scale=1.0 / beta, size=nb))
    if m > 1:
        sd = np.sqrt(1.0 / (2.0 * beta))
        rows, cols = np.triu_indices(m, k=1)
        t[:, rows, cols, :] = rng.normal(0.0, sd, size=(nb, rows.size, beta))
    return t if size is not None else t[0]


def sample_riesz_matrix(rng, p: RieszParams, size=None):
    """Draw V = u(xi)* (T* T) u(xi) with T a Bartlett factor."""
    t = sample_riesz_factor(rng, p, size=size if size is not None else 1)
    beta = p.algebra.beta
    v = alg.mat_mul(alg.mat_conj_t(t), t, beta)
    if p.xi is not None:
        u = p.xi.chol.data
        v = alg.mat_mul(alg.mat_conj_t(u), alg.mat_mul(v, u, beta), beta)
    v = alg.hermitian_part(v)
    if size is None:
        return HermitianPD(v[0], p.algebra)
    return v


def sample_stiefel(rng, beta: int, m: int, n: int, size=None):
    """Uniform frame on the Stiefel manifold of n x m matrices.

    Gram-Schmidt (two passes, positive diagonal) applied to a matrix of
    i.i.d. standard normal real components.
    """
    algebra = Algebra.from_beta(beta)
    _require_associative(algebra)
    if not 1 <= m <= n:
        raise ValueError(f"need n >= m >= 1, got n = {n}, m = {m}")
    (nb,) = _batched(size)
    g = rng.standard_normal((nb, n, m, beta))
    q = np.empty_like(g)
    for j in range(m):
        v = g[:, :, j, :].copy()
        for _ in range(2):
            for i in range(j):
                # r = q_i* v, then v -= q_i r (scalar acts from the right)
                r = alg.entry_mul(alg.entry_conj(q[:, :, i, :]), v, beta).sum(axis=1)
                v -= alg.entry_mul(q[:, :, i, :], r[:, None, :], beta)
        nrm = np.sqrt(np.sum(np.square(v), axis=(1, 2)))
        q[:, :, j, :] = v / nrm[:, None, None]
    if size is None:
        return DivMatrix(algebra, q[0], copy=False)
    return q


def sample_kotz_riesz(rng, p: KotzRieszParams, size=None):
    """Draw Y = u(theta)* (H T) u(sigma) + mu.

    T is the Bartlett factor of a Riesz(n beta/2, kappa, I) draw (drawn
    first), H an independent uniform Stiefel frame (drawn second); H T is
    a standardized draw since (H T)* (H T) = T* T.
    """
    _require_associative(p.algebra)
    beta = p.algebra.beta
    (nb,) = _batched(size)
    std = RieszParams(p.algebra, p.m, p.n * beta / 2.0, p.kappa)
    t = sample_riesz_factor(rng, std, size=nb)
    h = sample_stiefel(rng, beta, p.m, p.n, size=nb)
    y = alg.mat_mul(h, t, beta)
    if p.theta is not None:
        y = alg.mat_mul(alg.mat_conj_t(p.theta.chol.data), y, beta)
    if p.sigma is not None:
        y = alg.mat_mul(y, p.sigma.chol.data, beta)
    if p.mu is not None:
        y = y + p.mu.data
    if size is None:
        return DivMatrix(p.algebra, y[0], copy=False)
    return y


def _standardized_params(p: PearsonIIRieszParams) -> KotzRieszParams:
    return KotzRieszParams(p.algebra, p.n, p.m, kappa=p.tau)


def sample_pearson2riesz(rng, p: PearsonIIRieszParams, size=None, return_mixing=False):
    """Draw C = rho^{-1/2} u(theta)* R u(sigma) + mu.

    Draw order: the scalar mixing variable S1 ~ Gamma(nu beta/2 + k,
    rate beta), then a standardized Kotz-Riesz draw Y with weight tau.
    The standardized matrix is R = Y / sqrt(S) with S = S1 + ||Y||^2;
    every draw satisfies the support inequality since
    1 - ||R||^2 = S1 / S.  With ``return_mixing`` the pair (R, S) is
    returned alongside C.
    """
    _require_associative(p.algebra)
    beta = p.algebra.beta
    (nb,) = _batched(size)
    s1 = rng.gamma(p.nu * beta / 2.0 + p.k, scale=1.0 / beta, size=nb)
    y = sample_kotz_riesz(rng, _standardized_params(p), size=nb)
    s = s1 + alg.frob_sq(y)
    r = y / np.sqrt(s)[:, None, None, None]
    c = r / np.sqrt(p.rho)
    if p.theta is not None:
        c = alg.mat_mul(alg.mat_conj_t(p.theta.chol.data), c, beta)
    if p.sigma is not None:
        c = alg.mat_mul(c, p.sigma.chol.data, beta)
    if p.mu is not None:
        c = c + p.mu.data
    if size is None:
        c_out = DivMatrix(p.algebra, c[0], copy=False)
        if return_mixing:
            return c_out, DivMatrix(p.algebra, r[0], copy=False), float(s[0])
        return c_out
    if return_mixing:
        return c, r, s
    return c


def sample_beta_riesz(rng, p: BetaRieszParams, size=None):
    """Draw B = C* C with C a Pearson II-Riesz matrix (theta = I, mu = 0).

    The support inequality 1 - rho tr(sigma^{-1} B) > 0 holds for every
    draw by construction.
    """
    pc = PearsonIIRieszParams(
        p.algebra, p.n, p.m, p.nu, k=p.k, tau=p.tau, rho=p.rho, sigma=p.sigma
    )
    c = sample_pearson2riesz(rng, pc, size=size if size is not None else 1)
    beta = p.algebra.beta
    b = alg.hermitian_part(alg.mat_mul(alg.mat_conj_t(c), c, beta))
    if size is None:
        return HermitianPD(b[0], p.algebra)
    return b
