"""Dense complex matrices as elements of a unital Banach algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single entry point that validates shape and finiteness.  The algebra
norm is the spectral norm (largest singular value), which is
submultiplicative and gives the unit element norm one.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DomainError,
    InvalidInputError,
    NumericalFailureError,
    OverflowGuardError,
)

OVERFLOW_GUARD = 1e150
COS_SCALING_THRESHOLD = 0.5
COS_TAYLOR_TOL = 1e-16


def as_matrix(x):
    """Return ``x`` as a square complex128 array, validating it.

    Scalars are promoted to 1x1 matrices.
    """
    try:
        arr = np.array(x, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"cannot interpret input as a matrix: {exc}") from None
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise InvalidInputError(f"expected a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("matrix has non-finite entries")
    return arr


def identity(dim):
    """The unit element of the algebra of ``dim x dim`` matrices."""
    if int(dim) < 1:
        raise InvalidInputError("dimension must be positive")
    return np.eye(int(dim), dtype=np.complex128)


def frozen(x):
    """Read-only copy of ``x``; used by value types that must stay immutable."""
    arr = np.array(x, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


def operator_norm(x):
    """Spectral norm ``||x||``: the largest singular value."""
    x = as_matrix(x)
    return float(np.linalg.norm(x, 2))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a matrix, i.e. the values of its characters.

    For the algebra generated by a single matrix every character is an
    eigenvalue evaluation; ``u`` and ``v`` are the real and imaginary parts.
    """

    eigenvalues: tuple

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def u(self):
        return np.array([z.real for z in self.eigenvalues])

    @property
    def v(self):
        return np.array([z.imag for z in self.eigenvalues])

    @property
    def radius(self):
        return max(abs(z) for z in self.eigenvalues)


def spectrum(x):
    """Eigenvalues of ``x`` via LAPACK (Hessenberg reduction + shifted QR)."""
    x = as_matrix(x)
    try:
        eig = np.linalg.eigvals(x)
    except np.linalg.LinAlgError as exc:
        residual = float(np.linalg.norm(x))
        raise NumericalFailureError(f"eigenvalue iteration failed: {exc}", residual) from None
    return Spectrum(tuple(complex(z) for z in eig))


def spectral_radius_eig(x):
    """Spectral radius ``rho(x) = max |lambda|`` over the eigenvalues of ``x``."""
    return float(spectrum(x).radius)


@dataclass(frozen=True)
class GelfandEstimate:
    value: float
    k: int
    flagged: bool = False

    def __float__(self):
        return self.value


def spectral_radius_gelfand(x, k_max=12):
    """Estimate ``rho(x)`` as ``||x^(2^k)||^(1/2^k)`` by repeated squaring.

    The iterate is renormalised after each squaring and the scale is kept as
    a logarithm, so overflow cannot happen; an exactly nilpotent power ends
    the iteration with the exact answer 0.  If a normalised square loses all
    significant digits (underflow) the estimate from the previous ``k`` is
    returned with ``flagged=True``.
    """
    x = as_matrix(x)
    if int(k_max) < 1:
        raise InvalidInputError("k_max must be >= 1")
    norm = operator_norm(x)
    if norm == 0.0:
        return GelfandEstimate(0.0, 0)
    y = x / norm
    log_scale = math.log(norm)
    estimate = norm
    for k in range(1, int(k_max) + 1):
        y = y @ y
        ny = float(np.linalg.norm(y, 2))
        if ny == 0.0:
            return GelfandEstimate(0.0, k)
        if not math.isfinite(ny) or ny < 1e-300:
            return GelfandEstimate(estimate, k - 1, flagged=True)
        y /= ny
        log_scale = 2.0 * log_scale + math.log(ny)
        estimate = math.exp(log_scale / 2.0**k)
    return GelfandEstimate(estimate, int(k_max))


def matrix_cos(a, t=1.0):
    """``cos(t a)`` by scaling, a truncated Taylor series and doubling.

    ``t a`` is scaled by ``2^-k`` until its norm is at most 0.5, the cosine
    series is summed until the next term's norm bound drops below 1e-16, and
    ``C(2u) = 2 C(u)^2 - 1`` is applied ``k`` times.  The result depends on
    ``|t|`` only, so the function is exactly even in ``t``.
    """
    a = as_matrix(a)
    t = float(t)
    if not math.isfinite(t):
        raise InvalidInputError("t must be finite")
    n = a.shape[0]
    ident = identity(n)
    s = abs(t)
    if s == 0.0:
        return ident
    arg = s * a
    norm = float(np.linalg.norm(arg, 2))
    if not math.isfinite(norm) or norm > OVERFLOW_GUARD:
        raise OverflowGuardError(f"||t a|| = {norm:g} exceeds the overflow guard", value=norm)
    k = 0
    if norm > COS_SCALING_THRESHOLD:
        k = math.ceil(math.log2(norm / COS_SCALING_THRESHOLD))
    b = arg * 2.0**-k
    b2 = b @ b
    bound_b2 = math.ldexp(norm, -k) ** 2

    # Work with d = C - 1 so that the doubling 2C^2 - 1 = 1 + (2d^2 + 4d)
    # does not lose the small part of C to cancellation against 1.
    d = np.zeros_like(ident)
    term = ident
    j = 1
    bound = 1.0  # norm bound of the current term, bound_b2^j / (2j)!
    while True:
        term = term @ b2 * (-1.0 / ((2 * j - 1) * (2 * j)))
        d += term
        bound *= bound_b2 / ((2 * j - 1) * (2 * j))
        if bound * bound_b2 / ((2 * j + 1) * (2 * j + 2)) < COS_TAYLOR_TOL:
            break
        j += 1

    for _ in range(k):
        d = 2.0 * (d @ d) + 4.0 * d
        peak = float(np.max(np.abs(d)))
        if not math.isfinite(peak) or peak > OVERFLOW_GUARD:
            raise OverflowGuardError(
                f"cos(t a) overflowed while doubling (||t a|| = {norm:g})", value=norm
            )
    return ident + d


def _negative_axis_eigenvalues(x):
    eig = np.array(spectrum(x).eigenvalues)
    scale = max(1.0, float(np.max(np.abs(eig))))
    on_axis = (np.abs(eig.imag) <= 1e-12 * scale) & (eig.real <= 1e-14 * scale)
    return eig[on_axis]


def matrix_sqrt_newton(x, tol=1e-14, max_iter=100):
    """Principal square root by the Denman-Beavers Newton iteration.

    Raises :class:`DomainError` when an eigenvalue of ``x`` lies on the
    closed negative real axis, where no principal root exists.
    """
    x = as_matrix(x)
    bad = _negative_axis_eigenvalues(x)
    if bad.size:
        raise DomainError(f"eigenvalue(s) {bad.tolist()} on the closed negative real axis")
    y = x.copy()
    z = identity(x.shape[0])
    prev = math.inf
    for it in range(max_iter):
        try:
            y_inv = np.linalg.inv(y)
            z_inv = np.linalg.inv(z)
        except np.linalg.LinAlgError:
            raise NumericalFailureError("singular iterate in Denman-Beavers", prev) from None
        y_next = 0.5 * (y + z_inv)
        z = 0.5 * (z + y_inv)
        delta = float(np.linalg.norm(y_next - y, 2)) / max(float(np.linalg.norm(y_next, 2)), 1e-300)
        y = y_next
        if delta <= tol or (it > 5 and delta >= prev):
            break
        prev = delta
    residual = float(np.linalg.norm(y @ y - x, 2))
    if not residual <= 1e-8 * max(1.0, operator_norm(x)):
        raise NumericalFailureError(f"Newton square root diverged (residual {residual:g})", residual)
    return y


# -- JSON matrix format ------------------------------------------------------

def matrix_to_dict(x):
    x = as_matrix(x)
    return {
        "dim": int(x.shape[0]),
        "re": [[float(v) for v in row] for row in x.real],
        "im": [[float(v) for v in row] for row in x.imag],
    }


def matrix_from_dict(obj):
    try:
        dim = int(obj["dim"])
        re = np.array(obj["re"], dtype=np.float64)
        im = np.array(obj["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed matrix object: {exc}") from None
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise InvalidInputError(f"re/im arrays must be {dim}x{dim}")
    out = np.empty((dim, dim), dtype=np.complex128)
    out.real = re
    out.imag = im
    return as_matrix(out)


def dumps_matrix(x):
    return json.dumps(matrix_to_dict(x))


def loads_matrix(text):
    return matrix_from_dict(json.loads(text))


def save_matrix(path, x):
    with open(path, "w") as fh:
        fh.write(dumps_matrix(x))


def load_matrix(path):
    with open(path) as fh:
        return loads_matrix(fh.read())
