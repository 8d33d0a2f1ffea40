"""Chebyshev polynomials of the first kind, scalar and matrix valued.

A cosine sequence is fixed by its value at 1: ``C(n) = C(-n) = T_n(C(1))``.
Coefficients are exact Python integers; evaluation works on complex scalars
and on square matrices alike (powers use the matrix product).

The explicit formula reads

    T_n(x) = sum_{k=0}^{n//2} binom(n, 2k) x^(n-2k) (x^2 - 1)^k.

The binomial index is ``2k``.  The symbol is sometimes printed as ``C_n^k``,
but ``binom(n, k)`` would give ``T_2 = 3x^2 - 2``, which is not Chebyshev.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .algebra import as_matrix, identity
from .errors import InvalidInputError, OverflowGuardError

MAX_SEQUENCE_INDEX = 64


@dataclass(frozen=True)
class ChebCoeffs:
    """Exact integer coefficients of ``T_n``; ``coeffs[k]`` multiplies ``x^k``."""

    n: int
    coeffs: tuple

    def __call__(self, x):
        """Horner evaluation (scalar or matrix)."""
        return _horner(self.coeffs, x)

    @property
    def abs_sum(self):
        return sum(abs(c) for c in self.coeffs)


@lru_cache(maxsize=None)
def cheb_coeffs(n):
    """Coefficients of ``T_n`` expanded from the explicit binomial formula."""
    n = _check_degree(n)
    coeffs = [0] * (n + 1)
    for k in range(n // 2 + 1):
        outer = comb(n, 2 * k)
        # (x^2 - 1)^k = sum_j binom(k, j) x^(2j) (-1)^(k-j)
        for j in range(k + 1):
            coeffs[n - 2 * k + 2 * j] += outer * comb(k, j) * (-1) ** (k - j)
    return ChebCoeffs(n, tuple(coeffs))


def _check_degree(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise InvalidInputError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def _is_matrix(x):
    return isinstance(x, np.ndarray) and x.ndim == 2


def _unit_like(x):
    return identity(x.shape[0]) if _is_matrix(x) else 1.0 + 0j


def _prepare(x):
    if _is_matrix(x) or (isinstance(x, (list, tuple)) and np.ndim(x) == 2):
        return as_matrix(x)
    return complex(x)


def _mul(x, y):
    return x @ y if _is_matrix(x) else x * y


def _power(x, k):
    if _is_matrix(x):
        return np.linalg.matrix_power(x, k)
    return x**k


def _horner(coeffs, x):
    x = _prepare(x)
    one = _unit_like(x)
    acc = one * float(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = _mul(acc, x) + one * float(c)
    return acc


def cheb_explicit(n, x):
    """``T_n(x)`` from the explicit binomial sum (no recurrence)."""
    n = _check_degree(n)
    x = _prepare(x)
    one = _unit_like(x)
    x2m1 = _mul(x, x) - one
    total = one * 0
    for k in range(n // 2 + 1):
        total = total + comb(n, 2 * k) * _mul(_power(x, n - 2 * k), _power(x2m1, k))
    return total


def cheb_recurrence(n, x):
    """``T_n(x)`` from ``T_{k+1} = 2 x T_k - T_{k-1}``."""
    n = _check_degree(n)
    x = _prepare(x)
    prev = _unit_like(x)
    if n == 0:
        return prev
    cur = x
    for _ in range(n - 1):
        prev, cur = cur, 2 * _mul(x, cur) - prev
    return cur


def extend_cosine_sequence(c1, n):
    """``C(n) = T_|n|(C(1))``, the cosine sequence generated by ``c1``."""
    n = int(n)
    if abs(n) > MAX_SEQUENCE_INDEX:
        raise InvalidInputError(f"|n| must be <= {MAX_SEQUENCE_INDEX}")
    return cheb_recurrence(abs(n), c1)


def cheb_norm_bound(n, M):
    """Majorant ``sum_k |c_{n,k}| M^k`` of ``sup_{||y|| <= M} ||T_n(y)||``.

    Evaluated exactly (``M`` is converted to a ``Fraction``) and rounded to a
    float once at the end.
    """
    n = _check_degree(n)
    m = Fraction(M)
    if m < 0:
        raise InvalidInputError("M must be nonnegative")
    total = Fraction(0)
    for k, c in enumerate(cheb_coeffs(n).coeffs):
        if c:
            total += abs(c) * m**k
    try:
        return float(total)
    except OverflowError:
        raise OverflowGuardError(
            f"Chebyshev norm bound for n={n}, M={float(m):g} overflows a double",
            value=float(m), partial=total,
        ) from None
