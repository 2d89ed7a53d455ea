"""Dense matrices over the real normed division algebras.

An n x m matrix over the algebra with beta real dimensions per entry
(beta = 1 real, 2 complex, 4 quaternion, 8 octonion) is stored as a
float64 array of shape (n, m, beta).  Entry products expand against the
Cayley-Dickson structure table, so a single set of kernels covers the
associative cases uniformly; octonions may be stored but are rejected by
every operation that multiplies entries.

The array-level helpers (``mat_mul``, ``chol_upper``, the triangular
solves) accept arbitrary leading batch axes and back the samplers and
Monte Carlo checks.  ``DivMatrix``, ``HermitianPD`` and
``UpperTriangular`` wrap single matrices and enforce the type
invariants; ``HermitianPD`` factors eagerly, so determinants and
principal minors come from one Cholesky pass.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import NotPositiveDefiniteError, UnsupportedAlgebraError

__all__ = [
    "Algebra",
    "DivMatrix",
    "HermitianPD",
    "UpperTriangular",
    "conj_transpose",
    "cholesky_upper",
    "herm_det",
    "principal_minors",
    "frobenius_norm_sq",
    "real_representation",
    "mult_table",
]

# Cholesky pivots below PD_PIVOT_TOL * max(diagonal) count as failure.
PD_PIVOT_TOL = 1e-12


class Algebra(Enum):
    """One of the four real normed division algebras."""

    REAL = 1
    COMPLEX = 2
    QUATERNION = 4
    OCTONION = 8

    @property
    def beta(self) -> int:
        """Real dimension of the algebra."""
        return self.value

    @property
    def is_associative(self) -> bool:
        return self.value <= 4

    def spectral_pi_exponent(self, m: int) -> int:
        """Exponent correcting the pi power in spectral volume factors.

        Equals 0, -m, -2m, -4m for beta = 1, 2, 4, 8.
        """
        return -(self.value // 2) * m

    @classmethod
    def from_beta(cls, beta: int) -> "Algebra":
        try:
            return cls(int(beta))
        except ValueError:
            raise UnsupportedAlgebraError(
                f"beta must be one of 1, 2, 4, 8; got {beta!r}"
            ) from None

    @classmethod
    def from_name(cls, name: str) -> "Algebra":
        try:
            return cls[name.strip().upper()]
        except KeyError:
            raise UnsupportedAlgebraError(f"unknown algebra name {name!r}") from None


def _require_associative(algebra: Algebra, what: str) -> None:
    if not algebra.is_associative:
        raise UnsupportedAlgebraError(f"{what} is not supported for octonion matrices")


@lru_cache(maxsize=None)
def _basis_products(beta: int) -> tuple:
    """Cayley-Dickson products of basis elements: table[i][j] = (k, sign)."""
    if beta == 1:
        return (((0, 1.0),),)
    half = beta // 2
    sub = _basis_products(half)

    def csign(i: int) -> float:
        # sign picked up by conjugating basis element i of the half algebra
        return 1.0 if i == 0 else -1.0

    table = [[None] * beta for _ in range(beta)]
    for i in range(beta):
        for j in range(beta):
            if i < half and j < half:
                k, s = sub[i][j]
            elif i < half:
                # (a, 0)(0, d) = (0, d a)
                k, s = sub[j - half][i]
                k += half
            elif j < half:
                # (0, b)(c, 0) = (0, b conj(c))
                k, s = sub[i - half][j]
                s *= csign(j)
                k += half
            else:
                # (0, b)(0, d) = (-conj(d) b, 0)
                k, s = sub[j - half][i - half]
                s = -s * csign(j - half)
            table[i][j] = (k, s)
    return tuple(tuple(row) for row in table)


@lru_cache(maxsize=None)
def mult_table(beta: int) -> np.ndarray:
    """Structure constants M with e_i e_j = sum_k M[i, j, k] e_k."""
    if beta not in (1, 2, 4, 8):
        raise UnsupportedAlgebraError(f"beta must be one of 1, 2, 4, 8; got {beta!r}")
    table = _basis_products(beta)
    M = np.zeros((beta, beta, beta))
    for i in range(beta):
        for j in range(beta):
            k, s = table[i][j]
            M[i, j, k] = s
    M.setflags(write=False)
    return M


@lru_cache(maxsize=None)
def _conj_signs(beta: int) -> np.ndarray:
    s = -np.ones(beta)
    s[0] = 1.0
    s.setflags(write=False)
    return s


# ---------------------------------------------------------------------------
# Array-level kernels.  All accept leading batch axes; the algebra component
# axis is always last, the two matrix axes precede it.
# ---------------------------------------------------------------------------


def entry_conj(x: np.ndarray) -> np.ndarray:
    """Algebra conjugate, applied entrywise."""
    return x * _conj_signs(x.shape[-1])


def entry_mul(x: np.ndarray, y: np.ndarray, beta: int) -> np.ndarray:
    """Entrywise algebra product of component arrays (broadcasting)."""
    return np.einsum("...a,...b,abc->...c", x, y, mult_table(beta))


def mat_conj_t(x: np.ndarray) -> np.ndarray:
    """Conjugate transpose of (..., n, m, beta) arrays."""
    return entry_conj(np.swapaxes(x, -3, -2))


def mat_mul(x: np.ndarray, y: np.ndarray, beta: int) -> np.ndarray:
    """Matrix product of (..., n, k, beta) and (..., k, m, beta) arrays."""
    return np.einsum("...ika,...kjb,abc->...ijc", x, y, mult_table(beta))


def frob_sq(x: np.ndarray) -> np.ndarray:
    """Squared Frobenius norm: sum of squares of all real components."""
    return np.sum(np.square(x), axis=(-1, -2, -3))


def diag_real(x: np.ndarray) -> np.ndarray:
    """Real parts of the diagonal of square (..., m, m, beta) arrays."""
    m = x.shape[-2]
    idx = np.arange(m)
    return x[..., idx, idx, 0]


def chol_upper(s: np.ndarray, beta: int, tol: float = PD_PIVOT_TOL):
    """Batched upper Cholesky factor T with S = T* T.

    Returns (T, ok) where ok flags batch elements whose pivots all
    exceeded tol * max(diagonal).  Failed elements carry unit pivots so
    downstream arithmetic stays finite.
    """
    s = np.asarray(s, dtype=float)
    m = s.shape[-3]
    t = np.zeros_like(s)
    ok = np.ones(s.shape[:-3], dtype=bool)
    floor = tol * np.max(diag_real(s), axis=-1)
    for j in range(m):
        for i in range(j):
            acc = s[..., i, j, :].copy()
            for k in range(i):
                acc -= entry_mul(entry_conj(t[..., k, i, :]), t[..., k, j, :], beta)
            t[..., i, j, :] = acc / t[..., i, i, :1]
        pivot = s[..., j, j, 0].copy()
        for k in range(j):
            pivot -= np.sum(np.square(t[..., k, j, :]), axis=-1)
        bad = pivot <= floor
        ok = ok & ~bad
        t[..., j, j, 0] = np.sqrt(np.where(bad, 1.0, pivot))
    return t, ok


def solve_conjt_lower(t: np.ndarray, b: np.ndarray, beta: int) -> np.ndarray:
    """Solve T* Z = B for Z, with T upper triangular (T* is lower)."""
    m = t.shape[-3]
    if b.shape[-3] != m:
        raise ValueError(f"left solve needs B with {m} rows, got {b.shape[-3]}")
    z = np.empty(np.broadcast_shapes(t.shape[:-3], b.shape[:-3]) + b.shape[-3:])
    for i in range(m):
        acc = np.broadcast_to(b[..., i, :, :], z.shape[:-3] + b.shape[-2:]).copy()
        for k in range(i):
            acc -= entry_mul(
                entry_conj(t[..., k, i, None, :]), z[..., k, :, :], beta
            )
        z[..., i, :, :] = acc / t[..., i, i, None, :1]
    return z


def solve_upper_right(z: np.ndarray, t: np.ndarray, beta: int) -> np.ndarray:
    """Solve W T = Z for W, with T upper triangular."""
    m = t.shape[-3]
    if z.shape[-2] != m:
        raise ValueError(f"right solve needs Z with {m} columns, got {z.shape[-2]}")
    w = np.empty(np.broadcast_shapes(t.shape[:-3], z.shape[:-3]) + z.shape[-3:])
    for j in range(m):
        acc = np.broadcast_to(z[..., :, j, :], w.shape[:-3] + z.shape[-3:-2] + z.shape[-1:]).copy()
        for k in range(j):
            acc -= entry_mul(w[..., :, k, :], t[..., k, j, None, :], beta)
        w[..., :, j, :] = acc / t[..., j, j, None, :1]
    return w


def ln_minors_from_chol(t: np.ndarray) -> np.ndarray:
    """Logs of leading principal minors from an upper Cholesky factor."""
    return 2.0 * np.cumsum(np.log(diag_real(t)), axis=-1)


def hermitian_part(x: np.ndarray) -> np.ndarray:
    """Project onto the Hermitian part, (X + X*) / 2."""
    return 0.5 * (x + mat_conj_t(x))


def real_rep(x: np.ndarray, beta: int) -> np.ndarray:
    """Real block representation of left-multiplication by X."""
    M = mult_table(beta)
    n, m = x.shape[-3], x.shape[-2]
    rep = np.einsum("...ija,abc->...icjb", x, M)
    return rep.reshape(x.shape[:-3] + (n * beta, m * beta))


# ---------------------------------------------------------------------------
# Wrapper classes.
# ---------------------------------------------------------------------------


class DivMatrix:
    """A dense n x m matrix over a normed division algebra.

    The component array has shape (n, m, beta) and is treated as
    immutable after construction.
    """

    __slots__ = ("algebra", "data")

    def __init__(self, algebra: Algebra, data, *, copy: bool = True):
        arr = np.array(data, dtype=float, copy=copy)
        if arr.ndim == 2 and algebra.beta == 1:
            arr = arr[:, :, None]
        if arr.ndim != 3 or arr.shape[-1] != algebra.beta:
            raise ValueError(
                f"expected component array of shape (n, m, {algebra.beta}), "
                f"got {arr.shape}"
            )
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("matrix dimensions must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        self.algebra = algebra
        self.data = arr

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, algebra: Algebra, n: int, m: int) -> "DivMatrix":
        return cls(algebra, np.zeros((n, m, algebra.beta)), copy=False)

    @classmethod
    def eye(cls, algebra: Algebra, m: int) -> "DivMatrix":
        data = np.zeros((m, m, algebra.beta))
        data[np.arange(m), np.arange(m), 0] = 1.0
        return cls(algebra, data, copy=False)

    @classmethod
    def from_real(cls, algebra: Algebra, mat) -> "DivMatrix":
        """Embed a real 2-D array as the real components."""
        mat = np.asarray(mat, dtype=float)
        data = np.zeros(mat.shape + (algebra.beta,))
        data[..., 0] = mat
        return cls(algebra, data, copy=False)

    @classmethod
    def from_complex(cls, mat) -> "DivMatrix":
        mat = np.asarray(mat, dtype=complex)
        return cls(Algebra.COMPLEX, np.stack([mat.real, mat.imag], axis=-1), copy=False)

    # -- basic queries ------------------------------------------------------

    @property
    def nrows(self) -> int:
        return self.data.shape[0]

    @property
    def ncols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple:
        return self.data.shape[:2]

    def __repr__(self) -> str:
        return (
            f"DivMatrix({self.algebra.name.lower()}, {self.nrows}x{self.ncols})"
        )

    def allclose(self, other: "DivMatrix", atol: float = 1e-12) -> bool:
        return self.algebra is other.algebra and np.allclose(
            self.data, other.data, atol=atol
        )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "DivMatrix") -> "DivMatrix":
        self._check_peer(other)
        return DivMatrix(self.algebra, self.data + other.data, copy=False)

    def __sub__(self, other: "DivMatrix") -> "DivMatrix":
        self._check_peer(other)
        return DivMatrix(self.algebra, self.data - other.data, copy=False)

    def __mul__(self, scalar) -> "DivMatrix":
        return DivMatrix(self.algebra, self.data * float(scalar), copy=False)

    __rmul__ = __mul__

    def __matmul__(self, other: "DivMatrix") -> "DivMatrix":
        self._check_peer(other, dims=False)
        _require_associative(self.algebra, "matrix multiplication")
        if self.ncols != other.nrows:
            raise ValueError(
                f"shape mismatch: {self.shape} @ {other.shape}"
            )
        return DivMatrix(
            self.algebra, mat_mul(self.data, other.data, self.algebra.beta), copy=False
        )

    def _check_peer(self, other, dims: bool = True) -> None:
        if not isinstance(other, DivMatrix):
            raise TypeError(f"expected DivMatrix, got {type(other).__name__}")
        if self.algebra is not other.algebra:
            raise ValueError("algebras differ")
        if dims and self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    # -- named operations ----------------------------------------------------

    def conj_transpose(self) -> "DivMatrix":
        _require_associative(self.algebra, "conjugate transpose")
        return DivMatrix(self.algebra, mat_conj_t(self.data), copy=False)

    def frobenius_norm_sq(self) -> float:
        return float(frob_sq(self.data))

    def real_representation(self) -> np.ndarray:
        _require_associative(self.algebra, "the real representation")
        return real_rep(self.data, self.algebra.beta)


class UpperTriangular:
    """Upper triangular matrix with strictly positive real diagonal."""

    __slots__ = ("algebra", "data")

    def __init__(self, algebra: Algebra, data, *, copy: bool = True):
        arr = np.array(data, dtype=float, copy=copy)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[-1] != algebra.beta:
            raise ValueError(f"expected (m, m, {algebra.beta}) array, got {arr.shape}")
        m = arr.shape[0]
        below = np.tril_indices(m, k=-1)
        if np.any(arr[below] != 0.0):
            raise ValueError("entries below the diagonal must be zero")
        if np.any(arr[np.arange(m), np.arange(m), 1:] != 0.0):
            raise ValueError("diagonal entries must be real")
        if np.any(arr[np.arange(m), np.arange(m), 0] <= 0.0):
            raise ValueError("diagonal entries must be strictly positive")
        self.algebra = algebra
        self.data = arr

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def as_matrix(self) -> DivMatrix:
        return DivMatrix(self.algebra, self.data)

    def diagonal(self) -> np.ndarray:
        return diag_real(self.data).copy()

    def __repr__(self) -> str:
        return f"UpperTriangular({self.algebra.name.lower()}, {self.dim})"


class HermitianPD:
    """Hermitian positive definite matrix, factored at construction.

    The constructor symmetrizes the input, verifies hermitian symmetry
    within ``sym_tol`` (relative), and runs one upper Cholesky pass.  The
    factor and the logs of the leading principal minors are cached, so
    determinants, minors and highest-weight evaluations are cheap.
    """

    __slots__ = ("algebra", "data", "chol", "ln_minors")

    def __init__(self, matrix, algebra: Algebra | None = None, *, sym_tol: float = 1e-10):
        if isinstance(matrix, DivMatrix):
            algebra = matrix.algebra
            arr = matrix.data
        else:
            if algebra is None:
                raise TypeError("algebra is required when passing a raw array")
            arr = np.asarray(matrix, dtype=float)
            if arr.ndim == 2 and algebra.beta == 1:
                arr = arr[:, :, None]
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[-1] != algebra.beta:
            raise ValueError(f"expected a square (m, m, {algebra.beta}) array, got {arr.shape}")
        herm = hermitian_part(arr)
        scale = max(np.max(np.abs(arr)), 1.0)
        if np.max(np.abs(arr - herm)) > sym_tol * scale:
            raise ValueError("matrix is not Hermitian within tolerance")
        t, good = chol_upper(herm[None], algebra.beta)
        if not bool(good[0]):
            raise NotPositiveDefiniteError(
                "matrix is not positive definite (Cholesky pivot below tolerance)"
            )
        self.algebra = algebra
        self.data = herm
        self.chol = UpperTriangular(algebra, t[0], copy=False)
        self.ln_minors = ln_minors_from_chol(t[0])
        self.ln_minors.setflags(write=False)

    @classmethod
    def identity(cls, algebra: Algebra, m: int) -> "HermitianPD":
        return cls(DivMatrix.eye(algebra, m))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def as_matrix(self) -> DivMatrix:
        return DivMatrix(self.algebra, self.data)

    def herm_det(self) -> float:
        """Real determinant (the Moore determinant for quaternions)."""
        return float(np.exp(self.ln_minors[-1]))

    def ln_det(self) -> float:
        return float(self.ln_minors[-1])

    def principal_minors(self) -> np.ndarray:
        """Determinants of the leading p x p blocks, p = 1..m."""
        return np.exp(self.ln_minors)

    def __repr__(self) -> str:
        return f"HermitianPD({self.algebra.name.lower()}, {self.dim})"


# ---------------------------------------------------------------------------
# Operation wrappers mirroring the functional API.
# ---------------------------------------------------------------------------


def conj_transpose(x: DivMatrix) -> DivMatrix:
    """Conjugate transpose; an involution."""
    return x.conj_transpose()


def _as_hermitian_pd(s) -> HermitianPD:
    if isinstance(s, HermitianPD):
        return s
    if isinstance(s, DivMatrix):
        return HermitianPD(s)
    raise TypeError(f"expected HermitianPD or DivMatrix, got {type(s).__name__}")


def cholesky_upper(s) -> UpperTriangular:
    """Upper Cholesky factor T with S = T* T, unique for PD input."""
    return _as_hermitian_pd(s).chol


def herm_det(s) -> float:
    return _as_hermitian_pd(s).herm_det()


def principal_minors(s) -> np.ndarray:
    return _as_hermitian_pd(s).principal_minors()


def frobenius_norm_sq(x: DivMatrix) -> float:
    return x.frobenius_norm_sq()


def real_representation(x: DivMatrix) -> np.ndarray:
    """Real beta*n x beta*m block matrix of left-multiplication by x.

    A ring homomorphism for the associative algebras:
    real_representation(A @ B) == real_representation(A) @ real_representation(B).
    """
    return x.real_representation()
