"""Jack polynomials in the C normalization, for the spectral densities.

The zonal spherical functions appearing in the singular-value and
eigenvalue densities are Jack polynomials with parameter alpha = 2/beta,
normalized so that the partitions of k sum to the k-th power of the
trace:

    sum_{kappa |- k} C_kappa(X) = (tr X)^k.

Polynomials are expanded exactly in the monomial symmetric basis.  The
coefficients are rational for rational alpha and are computed with
Fraction arithmetic through the dominance-order recurrence: writing
rho(kappa) = sum_i kappa_i (kappa_i - 1 - beta (i - 1)), the coefficient
of m_lambda in C_kappa satisfies

    c_lambda = beta / (rho(kappa) - rho(lambda))
               * sum c_nu (lambda_i - lambda_j + 2 t),

summing over all moves (i < j, t >= 1) that raise lambda_i by t, lower
lambda_j by t and sort to a partition nu with lambda < nu <= kappa; the
leading coefficient is alpha^k k! / c'_kappa with c'_kappa the product
of alpha (arm + 1) + leg over the cells of kappa.  Expansions are cached
per (kappa, beta): readers are lock-free, insertion is serialized.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, UnsupportedAlgebraError

__all__ = [
    "Partition",
    "enumerate_partitions",
    "jack_C",
    "jack_C_identity",
    "DEFAULT_DEGREE_CAP",
]

DEFAULT_DEGREE_CAP = 12


@dataclass(frozen=True)
class Partition:
    """Nonincreasing tuple of nonnegative integers, trailing zeros stripped."""

    parts: tuple

    def __init__(self, parts=()):
        cleaned = tuple(int(p) for p in parts)
        if any(p < 0 for p in cleaned):
            raise DomainError(f"partition parts must be nonnegative: {parts}")
        if any(cleaned[i] < cleaned[i + 1] for i in range(len(cleaned) - 1)):
            raise DomainError(f"partition parts must be nonincreasing: {parts}")
        while cleaned and cleaned[-1] == 0:
            cleaned = cleaned[:-1]
        object.__setattr__(self, "parts", cleaned)

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(
            tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0]))
        )

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def as_partition(kappa) -> Partition:
    return kappa if isinstance(kappa, Partition) else Partition(tuple(np.atleast_1d(kappa)))


def _partitions_rl(k: int, max_part: int) -> list:
    """Partitions of k with parts <= max_part, reverse-lexicographic."""
    if k == 0:
        return [()]
    out = []
    for first in range(min(k, max_part), 0, -1):
        for rest in _partitions_rl(k - first, first):
            out.append((first,) + rest)
    return out


def enumerate_partitions(k: int, max_parts: int) -> list:
    """All partitions of k into at most max_parts parts, reverse-lex order."""
    if k < 0 or max_parts < 1:
        raise DomainError("need k >= 0 and max_parts >= 1")
    return [Partition(p) for p in _partitions_rl(k, k) if len(p) <= max_parts]


def _dominated_by(lam: tuple, kap: tuple) -> bool:
    """True when lam <= kap in dominance order (equal degree assumed)."""
    total_l = 0
    total_k = 0
    for i in range(max(len(lam), len(kap))):
        total_l += lam[i] if i < len(lam) else 0
        total_k += kap[i] if i < len(kap) else 0
        if total_l > total_k:
            return False
    return True


def _rho(lam: tuple, beta: int) -> int:
    return sum(p * (p - 1 - beta * i) for i, p in enumerate(lam))


def _c_prime(kappa: tuple, alpha: Fraction) -> Fraction:
    """Product over cells of alpha (arm + 1) + leg."""
    conj = Partition(kappa).conjugate().parts
    out = Fraction(1)
    for i, row in enumerate(kappa):
        for j in range(row):
            arm = row - (j + 1)
            leg = conj[j] - (i + 1)
            out *= alpha * (arm + 1) + leg
    return out


_EXPANSION_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _expand_C(kappa: tuple, beta: int) -> tuple:
    """Exact monomial expansion of C_kappa: tuple of (lambda, Fraction)."""
    key = (kappa, beta)
    hit = _EXPANSION_CACHE.get(key)
    if hit is not None:
        return hit
    with _CACHE_LOCK:
        hit = _EXPANSION_CACHE.get(key)
        if hit is not None:
            return hit
        alpha = Fraction(2, beta)
        k = sum(kappa)
        lead = Fraction(alpha**k) * math.factorial(k) / _c_prime(kappa, alpha)
        coeffs = {kappa: lead}
        rho_k = _rho(kappa, beta)
        for lam in _partitions_rl(k, k):
            if lam == kappa or not _dominated_by(lam, kappa):
                continue
            total = Fraction(0)
            for j in range(1, len(lam)):
                for i in range(j):
                    for t in range(1, lam[j] + 1):
                        moved = list(lam)
                        moved[i] += t
                        moved[j] -= t
                        nu = tuple(sorted((p for p in moved if p > 0), reverse=True))
                        coef = coeffs.get(nu)
                        if coef is not None:
                            total += (lam[i] - lam[j] + 2 * t) * coef
            if total:
                coeffs[lam] = Fraction(beta) * total / (rho_k - _rho(lam, beta))
        table = tuple(sorted(coeffs.items(), reverse=True))
        _EXPANSION_CACHE[key] = table
        return table


@lru_cache(maxsize=4096)
def _float_expansion(kappa: tuple, beta: int) -> tuple:
    return tuple((lam, float(c)) for lam, c in _expand_C(kappa, beta))


def _monomial_eval(lam: tuple, x: np.ndarray) -> float:
    """Monomial symmetric polynomial m_lambda at the point x."""
    if not lam:
        return 1.0
    if len(lam) > x.size:
        return 0.0
    groups = []
    prev = None
    for p in lam:
        if p == prev:
            groups[-1][1] += 1
        else:
            groups.append([p, 1])
            prev = p
    powers = {p: x**p for p, _ in groups}

    def rec(gi: int, free: tuple) -> float:
        if gi == len(groups):
            return 1.0
        p, cnt = groups[gi]
        total = 0.0
        from itertools import combinations

        for chosen in combinations(range(len(free)), cnt):
            chosen_set = set(chosen)
            term = 1.0
            for c in chosen:
                term *= powers[p][free[c]]
            rest = tuple(idx for pos, idx in enumerate(free) if pos not in chosen_set)
            total += term * rec(gi + 1, rest)
        return total

    return rec(0, tuple(range(x.size)))


def _check_jack_args(kappa, beta: int, degree_cap: int) -> Partition:
    if beta not in (1, 2, 4):
        raise UnsupportedAlgebraError(
            f"Jack polynomials are provided for beta in {{1, 2, 4}}, got {beta}"
        )
    part = as_partition(kappa)
    if part.degree > degree_cap:
        raise DomainError(
            f"partition degree {part.degree} exceeds the cap {degree_cap}"
        )
    return part


def jack_C(kappa, x, beta: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> float:
    """C-normalized Jack polynomial C_kappa(diag(x)) with alpha = 2/beta.

    Symmetric in x, homogeneous of degree |kappa|, and zero when kappa
    has more parts than x has entries.
    """
    part = _check_jack_args(kappa, beta, degree_cap)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if len(part) > xs.size:
        return 0.0
    if part.degree == 0:
        return 1.0
    return float(
        sum(c * _monomial_eval(lam, xs) for lam, c in _float_expansion(part.parts, beta))
    )


def jack_C_identity(kappa, m: int, beta: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> float:
    """C_kappa at the identity matrix of size m.

    Uses the count of distinct monomial rearrangements, so large m stays
    cheap: m_lambda(1, ..., 1) = m! / ((m - l)! prod_r mult_r!).
    """
    part = _check_jack_args(kappa, beta, degree_cap)
    if m < 1:
        raise DomainError("m must be at least 1")
    if len(part) > m:
        return 0.0
    if part.degree == 0:
        return 1.0
    total = 0.0
    for lam, c in _float_expansion(part.parts, beta):
        ell = len(lam)
        if ell > m:
            continue
        count = math.factorial(m) // math.factorial(m - ell)
        prev = None
        for p in lam:
            if p == prev:
                mult += 1
                count //= mult
            else:
                mult = 1
                prev = p
        total += c * count
    return float(total)
