"""Shared constructors for randomized test inputs."""

import numpy as np

from p2riesz.algebra import Algebra, DivMatrix, HermitianPD


def random_divmatrix(algebra: Algebra, n: int, m: int, rng) -> DivMatrix:
    return DivMatrix(algebra, rng.standard_normal((n, m, algebra.beta)))


def random_pd(algebra: Algebra, m: int, rng, extra_rows: int = 2) -> HermitianPD:
    """Well-conditioned random PD matrix built as X* X with n > m rows."""
    x = random_divmatrix(algebra, m + extra_rows, m, rng)
    return HermitianPD(x.conj_transpose() @ x)


def random_upper(algebra: Algebra, m: int, rng) -> DivMatrix:
    """Random upper triangular matrix with positive diagonal."""
    data = np.zeros((m, m, algebra.beta))
    rows, cols = np.triu_indices(m, k=1)
    data[rows, cols, :] = rng.normal(0.0, 0.7, (rows.size, algebra.beta))
    data[np.arange(m), np.arange(m), 0] = rng.uniform(0.5, 1.8, m)
    return DivMatrix(algebra, data)
