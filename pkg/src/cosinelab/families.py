"""Cosine families: constructors, evaluation and conformance residuals.

Four realizations are provided:

* :class:`Generator` -- ``t -> cos(t a)`` for a matrix ``a``;
* :class:`ScalarCos` / :class:`ScalarCosh` -- ``cos(a t)`` / ``cosh(a t)``;
* :class:`Hamel` -- ``cos(phi(t))`` or ``cosh(phi(t))`` where ``phi`` is an
  additive map on the group ``Z b1 + Z b2`` that is not continuous in the
  real topology.  These are the discontinuous examples that exhibit the
  ``limsup = 2`` and ``limsup = +inf`` behaviour near the origin.

Hamel families take :class:`GroupPoint` arguments, exact integer coordinates
``(p, q)`` standing for ``p b1 + q b2``.  The real number ``p b1 + q b2`` is
only used for ordering and reporting; evaluation never goes through it,
because ``p - q sqrt(2)`` loses all its digits in double precision once ``q``
passes ~1e7.
"""

import cmath
import json
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from mpmath.ctx_iv import MPIntervalContext

from .algebra import (
    OVERFLOW_GUARD,
    as_matrix,
    frozen,
    identity,
    matrix_cos,
    matrix_from_dict,
    matrix_to_dict,
    operator_norm,
)
from .errors import (
    ArgumentTypeError,
    InvalidInputError,
    OverflowGuardError,
    PrecisionBudgetError,
)

# 64 significant digits of each whitelisted irrational.
IRRATIONALS = {
    "sqrt2": "1.414213562373095048801688724209698078569671875376948073176679738",
    "golden": "1.618033988749894848204586834365638117720309179805762862135448623",
    "pi": "3.141592653589793238462643383279502884197169399375105820974944592",
}
WORKING_DPS = 60
MAX_CONVERGENTS = 40
_CONSTANT_ERROR = mpmath.mpf("1e-57")  # covers rounding of the stored digits

# Private interval context so the global mpmath.iv precision is left alone.
_iv = MPIntervalContext()
_iv.dps = WORKING_DPS


def irrational_value(name):
    if name not in IRRATIONALS:
        raise InvalidInputError(
            f"irrational {name!r} is not whitelisted; choose one of {sorted(IRRATIONALS)}"
        )
    with mpmath.workdps(WORKING_DPS):
        return mpmath.mpf(IRRATIONALS[name])


# -- group points -------------------------------------------------------------

@dataclass(frozen=True)
class GroupPoint:
    """Element ``p b1 + q b2`` of a rank-two subgroup of the reals.

    ``embedded_value`` holds the real number to ``WORKING_DPS`` digits; it is
    checked against an interval enclosure when the point is built.
    """

    p: int
    q: int
    b1: float = 1.0
    irrational: str = "sqrt2"
    embedded_value: mpmath.mpf = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.p) != self.p or int(self.q) != self.q:
            raise InvalidInputError("group coordinates must be integers")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "q", int(self.q))
        b2 = irrational_value(self.irrational)
        with mpmath.workdps(WORKING_DPS):
            value = self.p * mpmath.mpf(self.b1) + self.q * b2
            b2_iv = _iv.mpf([b2 - _CONSTANT_ERROR, b2 + _CONSTANT_ERROR])
        enclosure = self.p * _iv.mpf(self.b1) + self.q * b2_iv
        if value not in enclosure:
            raise PrecisionBudgetError(f"embedding of ({self.p}, {self.q}) escaped its enclosure")
        if (self.p, self.q) != (0, 0) and 0 in enclosure:
            raise PrecisionBudgetError(
                f"sign of {self.p}*b1 + {self.q}*b2 is not resolved at {WORKING_DPS} digits"
            )
        object.__setattr__(self, "embedded_value", value)

    def _same_group(self, other):
        if not isinstance(other, GroupPoint):
            return NotImplemented
        if (self.b1, self.irrational) != (other.b1, other.irrational):
            raise InvalidInputError("group points belong to different groups")
        return True

    def _new(self, p, q):
        return GroupPoint(p, q, self.b1, self.irrational)

    def __add__(self, other):
        if self._same_group(other) is NotImplemented:
            return NotImplemented
        return self._new(self.p + other.p, self.q + other.q)

    def __sub__(self, other):
        if self._same_group(other) is NotImplemented:
            return NotImplemented
        return self._new(self.p - other.p, self.q - other.q)

    def __neg__(self):
        return self._new(-self.p, -self.q)

    def __mul__(self, n):
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
            return NotImplemented
        return self._new(int(n) * self.p, int(n) * self.q)

    __rmul__ = __mul__

    def __float__(self):
        return float(self.embedded_value)


# -- families -----------------------------------------------------------------

class CosineFamily:
    """Common interface: ``family(t)`` returns ``C(t)`` as a matrix."""

    dim = 1
    real_argument = True
    kind = ""

    def __call__(self, t):
        raise NotImplementedError

    def evaluate(self, t):
        return self(t)

    def identity(self):
        return identity(self.dim)

    def _real(self, t):
        if isinstance(t, GroupPoint):
            raise ArgumentTypeError(f"{type(self).__name__} takes real arguments, not group points")
        t = float(t)
        if not math.isfinite(t):
            raise InvalidInputError("t must be finite")
        return abs(t)


@dataclass(frozen=True, eq=False)
class Generator(CosineFamily):
    """``C(t) = cos(t a)``."""

    a: np.ndarray
    kind = "generator"

    def __post_init__(self):
        object.__setattr__(self, "a", frozen(as_matrix(self.a)))

    @property
    def dim(self):
        return self.a.shape[0]

    def __call__(self, t):
        return matrix_cos(self.a, self._real(t))


def _scalar(value):
    return np.array([[value]], dtype=np.complex128)


def _guarded(fn, z):
    try:
        w = fn(z)
    except OverflowError:
        raise OverflowGuardError(f"{fn.__name__}({z}) overflows", value=abs(z)) from None
    if abs(w) > OVERFLOW_GUARD:
        raise OverflowGuardError(f"|{fn.__name__}({z})| exceeds the overflow guard", value=abs(z))
    return w


@dataclass(frozen=True)
class ScalarCos(CosineFamily):
    """``c(t) = cos(a t)`` with complex ``a``."""

    a: complex
    kind = "scalar_cos"

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))

    def __call__(self, t):
        s = self._real(t)
        if s == 0.0:
            return _scalar(1.0)
        return _scalar(_guarded(cmath.cos, self.a * s))


@dataclass(frozen=True)
class ScalarCosh(CosineFamily):
    """``c(t) = cosh(a t)`` with complex ``a``."""

    a: complex
    kind = "scalar_cosh"

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))

    def __call__(self, t):
        s = self._real(t)
        if s == 0.0:
            return _scalar(1.0)
        return _scalar(_guarded(cmath.cosh, self.a * s))


@dataclass(frozen=True)
class HamelSpec:
    """Basis ``(b1, b2)`` with ``b2`` a whitelisted irrational, and the additive map.

    ``phi(p b1 + q b2) = p * mu + q * nu`` with ``phi_coeffs = (mu, nu)``.
    """

    b1: float = 1.0
    irrational: str = "sqrt2"
    phi_coeffs: tuple = (0.0, 1.0)
    function: str = "cos"

    def __post_init__(self):
        irrational_value(self.irrational)
        b1 = float(self.b1)
        if not (math.isfinite(b1) and b1 > 0):
            raise InvalidInputError("b1 must be a positive finite real")
        object.__setattr__(self, "b1", b1)
        mu, nu = (float(c) for c in self.phi_coeffs)
        object.__setattr__(self, "phi_coeffs", (mu, nu))
        if self.function not in ("cos", "cosh"):
            raise InvalidInputError(f"function must be 'cos' or 'cosh', got {self.function!r}")

    @property
    def xi(self):
        """``b2 / b1`` to ``WORKING_DPS`` digits."""
        with mpmath.workdps(WORKING_DPS):
            return irrational_value(self.irrational) / mpmath.mpf(self.b1)

    def point(self, p, q):
        return GroupPoint(p, q, self.b1, self.irrational)

    def phi(self, pt):
        mu, nu = self.phi_coeffs
        return pt.p * mu + pt.q * nu


@dataclass(frozen=True)
class Hamel(CosineFamily):
    """``C(p b1 + q b2) = cos(phi)`` or ``cosh(phi)``, ``phi = p mu + q nu``.

    Any such map satisfies d'Alembert's equation on the group because ``phi``
    is additive there.  It is an artificial witness built for this
    laboratory, not one drawn from the literature.
    """

    spec: HamelSpec = field(default_factory=HamelSpec)
    kind = "hamel"
    real_argument = False

    def __call__(self, t):
        if not isinstance(t, GroupPoint):
            raise ArgumentTypeError(
                "Hamel families take GroupPoint arguments; a real number would "
                "lose the exact coordinates"
            )
        if (t.b1, t.irrational) != (self.spec.b1, self.spec.irrational):
            raise InvalidInputError("group point is from a different basis")
        if t.p == 0 and t.q == 0:
            return _scalar(1.0)
        phi = abs(self.spec.phi(t))
        fn = math.cos if self.spec.function == "cos" else math.cosh
        return _scalar(_guarded(fn, phi))

    def point(self, p, q):
        return self.spec.point(p, q)


def evaluate(family, t):
    """``C(t)`` for any realization."""
    return family(t)


# -- conformance residuals ----------------------------------------------------

def dalembert_residual(family, s, t):
    """``||C(s+t) + C(s-t) - 2 C(s) C(t)||``."""
    cs, ct = family(s), family(t)
    return operator_norm(family(s + t) + family(s - t) - 2.0 * (cs @ ct))


def product_identity_residual(family, s, t):
    """``||(1 - C(s-t))(1 - C(s+t)) - (C(s) - C(t))^2||``."""
    one = family.identity()
    d = family(s) - family(t)
    return operator_norm((one - family(s - t)) @ (one - family(s + t)) - d @ d)


def commutation_residual(family, s, t):
    """``||C(s) C(t) - C(t) C(s)||``."""
    cs, ct = family(s), family(t)
    return operator_norm(cs @ ct - ct @ cs)


# -- continued fractions ------------------------------------------------------

def _convergents_of(xi, count):
    """First ``count`` convergents ``(p, q)`` of the mp real ``xi``."""
    out = []
    h2, h1 = 0, 1
    k2, k1 = 1, 0
    with mpmath.workdps(WORKING_DPS):
        x = mpmath.mpf(xi)
        for _ in range(count):
            a = int(mpmath.floor(x))
            h2, h1 = h1, a * h1 + h2
            k2, k1 = k1, a * k1 + k2
            out.append((h1, k1))
            frac = x - a
            if frac == 0:
                raise InvalidInputError("value is rational to working precision")
            x = 1 / frac
    return out


def convergents(xi, k):
    """The first ``k`` continued-fraction convergents ``p_j / q_j`` of ``xi``.

    ``xi`` names a whitelisted irrational (``"sqrt2"``, ``"golden"``,
    ``"pi"``) or is an mpmath real.  Each convergent is checked to satisfy
    ``|p_j - q_j xi| < 1 / q_{j+1}`` in high precision.
    """
    k = int(k)
    if k < 1:
        raise InvalidInputError("k must be >= 1")
    if k > MAX_CONVERGENTS:
        raise PrecisionBudgetError(
            f"at most {MAX_CONVERGENTS} convergents are supported", MAX_CONVERGENTS
        )
    if isinstance(xi, str):
        value = irrational_value(xi)
    else:
        with mpmath.workdps(WORKING_DPS):
            value = mpmath.mpf(xi)
    cv = _convergents_of(value, k + 1)
    # Each partial quotient costs about 2 log10(q) digits of the stored constant.
    budget = mpmath.mpf(10) ** (WORKING_DPS - 10)
    supported = sum(1 for _, q in cv if mpmath.mpf(q) ** 2 < budget) - 1
    if supported < k:
        raise PrecisionBudgetError(
            f"only {max(supported, 0)} convergents are reliable for this value", max(supported, 0)
        )
    with mpmath.workdps(WORKING_DPS):
        for (p, q), (_, q_next) in zip(cv, cv[1:]):
            if not abs(p - q * value) < mpmath.mpf(1) / q_next:
                raise PrecisionBudgetError(f"convergent {p}/{q} failed the approximation check")
    return cv[:k]


def convergent_points(spec, k):
    """Group points ``p_j b1 - q_j b2`` tending to 0, from the convergents of ``b2/b1``."""
    return [spec.point(p, -q) for p, q in convergents(spec.xi, k)]


# -- family description files -------------------------------------------------

def _complex_from_json(value):
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict):
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    raise InvalidInputError(f"cannot read a complex number from {value!r}")


def family_to_dict(family):
    if isinstance(family, Generator):
        return {"kind": "generator", "matrix": matrix_to_dict(family.a)}
    if isinstance(family, (ScalarCos, ScalarCosh)):
        return {"kind": family.kind, "a": [family.a.real, family.a.imag]}
    if isinstance(family, Hamel):
        s = family.spec
        return {
            "kind": "hamel",
            "b1": s.b1,
            "irrational": s.irrational,
            "phi_coeffs": list(s.phi_coeffs),
            "function": s.function,
        }
    raise InvalidInputError(f"unknown family type {type(family).__name__}")


def family_from_dict(obj):
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InvalidInputError("family description must be an object with a 'kind' field")
    kind = obj["kind"]
    try:
        if kind == "generator":
            return Generator(matrix_from_dict(obj["matrix"]))
        if kind == "scalar_cos":
            return ScalarCos(_complex_from_json(obj["a"]))
        if kind == "scalar_cosh":
            return ScalarCosh(_complex_from_json(obj["a"]))
        if kind == "hamel":
            return Hamel(HamelSpec(
                b1=obj.get("b1", 1.0),
                irrational=obj.get("irrational", "sqrt2"),
                phi_coeffs=tuple(obj.get("phi_coeffs", (0.0, 1.0))),
                function=obj.get("function", "cos"),
            ))
    except KeyError as exc:
        raise InvalidInputError(f"family description is missing field {exc}") from None
    raise InvalidInputError(f"unknown family kind {kind!r}")


def load_family(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: not valid JSON ({exc})") from None
    return family_from_dict(obj)


def save_family(path, family):
    with open(path, "w") as fh:
        json.dump(family_to_dict(family), fh, indent=2)
