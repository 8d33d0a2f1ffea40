"""Binomial series for ``sqrt(1 - z)`` and its matrix version.

With ``alpha_n = binom(1/2, n)`` the series is

    sqrt(1 - z) = sum_n (-1)^n alpha_n z^n = 1 - sum_{n>=1} |alpha_n| z^n,

because ``(-1)^(n-1) alpha_n >= 0`` for ``n >= 1``.  Positivity makes the
truncation error exactly computable: for ``0 <= t <= 1``

    sum_{n>=1} |alpha_n| t^n = 1 - sqrt(1 - t),

so the tail after ``N`` terms is ``(1 - sqrt(1 - t)) - sum_{n<=N} |alpha_n| t^n``,
and it bounds the error of the partial sum at every ``z`` with ``|z| <= t``
and every matrix with ``||x|| <= t``.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import as_matrix, identity, operator_norm, spectrum
from .errors import DomainError, InvalidInputError, SlowConvergenceError

MAX_TERMS = 10**6
NORM_SLACK = 1e-12  # rounding allowance when a norm should be exactly 1
_CHUNK = 4096


@dataclass(frozen=True)
class SqrtSeriesCoeffs:
    """``alpha[0..n_max]`` with ``alpha[0] = 1`` and running sums of ``|alpha_n|``.

    ``abs_partial[n] = sum_{k=1}^{n} |alpha_k|`` (so ``abs_partial[0] = 0``).
    """

    n_max: int
    alpha: np.ndarray
    abs_partial: np.ndarray


def _abs_alpha(n_max):
    """``|alpha_n|`` for ``n = 0..n_max`` via the ratio recurrence."""
    ratios = np.empty(n_max + 1)
    ratios[0] = 1.0
    if n_max >= 1:
        n = np.arange(1, n_max + 1, dtype=np.float64)
        ratios[1:] = np.abs(0.5 - (n - 1.0)) / n
    return np.cumprod(ratios)


@lru_cache(maxsize=32)
def alpha_coeffs(n_max):
    """Coefficients from ``alpha[n+1] = alpha[n] (1/2 - n) / (n + 1)``."""
    n_max = int(n_max)
    if n_max < 1:
        raise InvalidInputError("n_max must be >= 1")
    alpha = np.empty(n_max + 1)
    alpha[0] = 1.0
    for n in range(n_max):
        alpha[n + 1] = alpha[n] * (0.5 - n) / (n + 1)
    abs_partial = np.concatenate(([0.0], np.cumsum(np.abs(alpha[1:]))))
    alpha.flags.writeable = False
    abs_partial.flags.writeable = False
    return SqrtSeriesCoeffs(n_max, alpha, abs_partial)


def bound_rhs(norm_x):
    """``1 - sqrt(1 - ||x||)``, the norm bound for ``||1 - sqrt(1 - x)||``.

    Evaluated as ``s / (1 + sqrt(1 - s))`` to avoid cancellation for small
    ``s``.
    """
    s = float(norm_x)
    if not (0.0 <= s <= 1.0 + NORM_SLACK):
        raise DomainError(f"norm must lie in [0, 1], got {s!r}")
    s = min(s, 1.0)
    return s / (1.0 + math.sqrt(1.0 - s))


@dataclass(frozen=True)
class Truncation:
    terms: int          # index N of the last term kept
    tail: float         # exact tail bound at t after N terms
    converged: bool


def truncation(t, tol, max_terms=MAX_TERMS):
    """First ``N`` with tail bound below ``tol`` for ``|z| <= t``.

    Stops early (``converged=True``) if the terms fall below double
    precision relative to the sum, since the tail is then below what
    rounding can resolve.
    """
    t = float(t)
    if tol <= 0:
        raise InvalidInputError("tol must be positive")
    if t == 0.0:
        return Truncation(0, 0.0, True)
    total = bound_rhs(t)
    partial = 0.0
    weight = 1.0  # |alpha_n| t^n at the end of the previous chunk
    start = 1
    while start <= max_terms:
        stop = min(start + _CHUNK, max_terms + 1)
        n = np.arange(start, stop, dtype=np.float64)
        w = weight * np.cumprod(t * np.abs(n - 1.5) / n)
        sums = partial + np.cumsum(w)
        tails = total - sums
        hit = np.flatnonzero((tails < tol) | (w <= 1e-17 * sums))
        if hit.size:
            i = int(hit[0])
            return Truncation(start + i, max(float(tails[i]), 0.0), True)
        partial = float(sums[-1])
        weight = float(w[-1])
        start = stop
    return Truncation(max_terms, total - partial, False)


def _series_coefficients(n):
    """``(-1)^k alpha_k`` for ``k = 0..n``: 1 then ``-|alpha_k|``."""
    c = -_abs_alpha(n)
    c[0] = 1.0
    return c


def scalar_sqrt_series(z, tol=1e-14, max_terms=MAX_TERMS):
    """Partial sum of the binomial series for ``sqrt(1 - z)``, ``|z| <= 1``."""
    z = complex(z)
    t = abs(z)
    if t > 1.0:
        raise DomainError(f"|z| = {t!r} > 1 is outside the disc of convergence")
    # half of tol, so that |w^2 - (1 - z)| <= tol * |w + sqrt(1 - z)| stays <= 2 tol
    trunc = truncation(t, tol / 2.0, max_terms)
    if not trunc.converged:
        raise SlowConvergenceError(
            f"series at |z| = {t} needs more than {max_terms} terms for tol={tol:g} "
            f"(tail {trunc.tail:.3g}); use the Newton square root instead",
            trunc.tail,
        )
    c = _series_coefficients(trunc.terms)
    return complex(np.polyval(c[::-1], z))


@dataclass(frozen=True)
class SqrtSeriesResult:
    """Matrix square root by series, with its truncation certificate.

    ``bound`` is ``1 - sqrt(1 - ||x||)``, the a priori bound for
    ``||1 - sqrt(1 - x)||``; ``tail`` the truncation error bound actually
    achieved; ``converged`` is False when the term cap was hit first.
    """

    value: np.ndarray
    terms: int
    tail: float
    norm_x: float
    bound: float
    converged: bool


def matrix_sqrt_series(x, tol=1e-13, max_terms=MAX_TERMS):
    """``sqrt(1 - x)`` for ``||x|| <= 1`` by Horner evaluation of the series."""
    x = as_matrix(x)
    norm_x = operator_norm(x)
    if norm_x > 1.0 + NORM_SLACK:
        raise DomainError(f"||x|| = {norm_x!r} > 1")
    trunc = truncation(min(norm_x, 1.0), tol, max_terms)
    c = _series_coefficients(trunc.terms)
    ident = identity(x.shape[0])
    y = c[-1] * ident
    for ck in c[-2::-1]:
        y = y @ x
        y += ck * ident
    y.flags.writeable = False
    return SqrtSeriesResult(y, trunc.terms, trunc.tail, norm_x, bound_rhs(norm_x), trunc.converged)


def halfplane_check(x, tol=1e-8, max_terms=20000):
    """True iff every eigenvalue of the series root of ``1 - x`` has Re >= -1e-9."""
    root = matrix_sqrt_series(x, tol, max_terms).value
    return min(z.real for z in spectrum(root).eigenvalues) >= -1e-9

