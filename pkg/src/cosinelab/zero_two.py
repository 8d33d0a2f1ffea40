"""Executable forms of the zero-two law and its ingredients.

* :func:`half_angle_reconstruct` recovers ``C(t/2)`` from ``C(t)`` as
  ``sqrt(1 - (1 - C(t))/2)``, valid when ``||C(t) - 1|| <= 2`` and
  ``rho(C(t/2) - 1) < 1``.
* :func:`dyadic_refine` chains the reconstruction down ``t0, t0/2, ...``
  and compares each step with the true family and with the envelope
  ``u_0 = 2, u_{n+1} = 1 - sqrt(1 - u_n/2)``.
* :func:`limsup_estimate` classifies a family by
  ``limsup_{t->0} ||C(t) - 1||`` into the branches 0, 2 and infinity.
* :func:`spectral_limsup` and :func:`spectral_zero_two_check` realize the
  spectral-radius version through the eigenvalues of a generator.
"""

import cmath
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .algebra import identity, operator_norm, spectral_radius_eig, spectrum, matrix_cos, as_matrix
from .errors import DomainError, InvalidInputError, OverflowGuardError
from .families import CosineFamily, Hamel, convergent_points
from .sqrt_series import NORM_SLACK, bound_rhs, matrix_sqrt_series

HALF_ANGLE_TOL = 1e-7
SERIES_TOL = 1e-14


# -- half-angle reconstruction ------------------------------------------------

def _gap(c):
    return operator_norm(c - identity(c.shape[0]))


def _check_gap(gap):
    if gap > 2.0 + 2.0 * NORM_SLACK:
        raise DomainError(f"||C(t) - 1|| = {gap!r} > 2; the square-root series does not apply")


def half_angle_reconstruct(ct, tol=SERIES_TOL, full_output=False):
    """Candidate for ``C(t/2)``: the series root ``sqrt(1 - (1 - C(t))/2)``.

    The caller is responsible for the spectral hypothesis
    ``rho(C(t/2) - 1) < 1``; without it the result can be a different
    square root (see :func:`check_half_angle`).  With ``full_output`` the
    :class:`~cosinelab.sqrt_series.SqrtSeriesResult` is returned, which
    also reports slow convergence at the boundary ``||C(t) - 1|| = 2``.
    """
    ct = as_matrix(ct)
    _check_gap(_gap(ct))
    x = 0.5 * (identity(ct.shape[0]) - ct)
    res = matrix_sqrt_series(x, tol)
    return res if full_output else res.value


def half_angle_bound(ct):
    """``1 - sqrt(1 - ||C(t) - 1|| / 2)``, a bound for ``||C(t/2) - 1||``."""
    ct = as_matrix(ct)
    gap = _gap(ct)
    _check_gap(gap)
    return bound_rhs(min(gap / 2.0, 1.0))


@dataclass(frozen=True)
class HalfAngleCheck:
    """Outcome of comparing a reconstruction with the true ``C(t/2)``.

    ``status`` is ``"pass"`` or ``"fail"`` when both hypotheses hold, and
    ``"precondition_violated"`` when ``rho(C(t/2) - 1) >= 1``, in which case
    a mismatch is expected and is not counted as a failure.
    """

    status: str
    deviation: float
    rho: float
    gap: float
    reconstructed: np.ndarray = field(repr=False)


def check_half_angle(ct, ct_half, tol=HALF_ANGLE_TOL, series_tol=SERIES_TOL):
    ct, ct_half = as_matrix(ct), as_matrix(ct_half)
    gap = _gap(ct)
    rec = half_angle_reconstruct(ct, series_tol)
    deviation = operator_norm(rec - ct_half)
    rho = spectral_radius_eig(ct_half - identity(ct.shape[0]))
    if rho >= 1.0:
        status = "precondition_violated"
    else:
        status = "pass" if deviation <= tol else "fail"
    return HalfAngleCheck(status, deviation, rho, gap, rec)


def reconstruct_chain(ct0, n_steps, series_tol=SERIES_TOL):
    """Halve ``n_steps`` times without ground truth.

    The spectral hypothesis can then only be checked on the reconstructed
    values themselves; each entry is ``(matrix, rho_of_reconstruction,
    status)`` with status ``"self-consistent"`` or ``"precondition_violated"``.
    """
    cur = as_matrix(ct0)
    out = []
    for _ in range(int(n_steps)):
        if _gap(cur) > 2.0 + 2.0 * NORM_SLACK:
            break
        cur = half_angle_reconstruct(cur, series_tol)
        rho = spectral_radius_eig(cur - identity(cur.shape[0]))
        status = "self-consistent" if rho < 1.0 else "precondition_violated"
        out.append((cur, rho, status))
        if rho >= 1.0:
            break
    return out


# -- contraction envelope -----------------------------------------------------

@dataclass(frozen=True)
class ContractionSequence:
    """``u_0 = 2``, ``u_{n+1} = 1 - sqrt(1 - u_n / 2)``.

    ``sup_{|t| <= eta 2^-n} ||C(t) - 1|| <= u_n`` under the hypotheses of
    the half-angle reconstruction on ``|t| <= eta``.
    """

    eta: float
    values: tuple

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    @property
    def ratios(self):
        return tuple(b / a for a, b in zip(self.values, self.values[1:]))


def contraction_step(u):
    """One envelope step, evaluated as ``(u/2) / (1 + sqrt(1 - u/2))``."""
    h = u / 2.0
    return h / (1.0 + math.sqrt(1.0 - h))


def contraction_sequence(n_max, eta=1.0):
    """``u_0 .. u_{n_max}``, each the correctly rounded double of the exact value.

    The recursion runs in 50-digit arithmetic in the cancellation-free form
    and is rounded once per term, so float rounding does not accumulate.
    """
    n_max = int(n_max)
    if n_max < 1:
        raise InvalidInputError("n_max must be >= 1")
    with mpmath.workdps(50):
        u = mpmath.mpf(2)
        values = [2.0]
        for _ in range(n_max):
            h = u / 2
            u = h / (1 + mpmath.sqrt(1 - h))
            values.append(float(u))
    return ContractionSequence(float(eta), tuple(values))


@dataclass(frozen=True)
class FixedPointScan:
    n_grid: int
    violations: int
    min_gap: float   # min over the grid of l - (1 - sqrt(1 - l/2))

    @property
    def passed(self):
        return self.violations == 0


def fixed_point_scan(n_grid=100_000):
    """Check that ``l <= 1 - sqrt(1 - l/2)`` fails on a uniform grid of ``(0, 2]``."""
    l = 2.0 * np.arange(1, n_grid + 1) / n_grid
    h = l / 2.0
    rhs = h / (1.0 + np.sqrt(1.0 - h))
    holds = l <= rhs
    return FixedPointScan(int(n_grid), int(np.count_nonzero(holds)), float(np.min(l - rhs)))


# -- dyadic refinement --------------------------------------------------------

@dataclass(frozen=True)
class RefinementStep:
    n: int
    t: float
    reconstructed: np.ndarray = field(repr=False)
    ground_truth: np.ndarray = field(repr=False)
    deviation: float
    norm_gap: float           # ||C(t_n) - 1|| of the true family
    envelope: float           # u_n, indexed from t0
    precondition_rho: float   # rho(C(t_n / 2) - 1)
    within_eta: bool
    certified_envelope: float  # u_{n-k} for t_n = eta 2^-(n-k); nan outside eta
    status: str               # ok | deviation | precondition_violated | domain
    flagged: bool


@dataclass(frozen=True)
class RefinementTrace:
    t0: float
    tol: float
    eta: float                # nan when no admissible scale was found
    eta_index: int            # k with eta = t0 / 2^k, -1 if none
    steps: tuple
    truncated: bool

    @property
    def flagged_steps(self):
        return [s for s in self.steps if s.flagged]


def dyadic_refine(family, t0, n_steps, tol=HALF_ANGLE_TOL, series_tol=SERIES_TOL):
    """Reconstruct ``C(t0 / 2^n)`` by repeated halving and compare with the family.

    Step ``n`` halves the *reconstructed* value of step ``n - 1``, so error
    accumulation is part of the trace.  A step whose successor is not
    licensed (``precondition_rho >= 1`` or gap above 2) is flagged; the
    following step is still computed to show the mismatch and the trace
    then stops.

    ``eta`` is ``t0 / 2^k`` for the smallest ``k`` such that both hypotheses
    hold at every sampled scale ``t0 / 2^j``, ``j >= k``.
    """
    if not isinstance(family, CosineFamily) or not family.real_argument:
        raise InvalidInputError("dyadic_refine needs a family with real arguments")
    n_steps = int(n_steps)
    if not 0 <= n_steps <= 40:
        raise InvalidInputError("n_steps must lie in [0, 40]")
    t0 = float(t0)
    one = family.identity()
    ts = [t0 / 2.0**j for j in range(n_steps + 2)]
    truth = [family(t) for t in ts]
    gaps = [operator_norm(c - one) for c in truth]
    rhos = [spectral_radius_eig(c - one) for c in truth[1:]]

    eta_index = -1
    for j in range(n_steps, -1, -1):
        if gaps[j] <= 2.0 and rhos[j] < 1.0:
            eta_index = j
        else:
            break
    eta = ts[eta_index] if eta_index >= 0 else math.nan
    envelope = contraction_sequence(max(n_steps, 1), eta if eta_index >= 0 else 1.0)

    def admissible(rec_gap, j):
        return rec_gap <= 2.0 + 2.0 * NORM_SLACK and rhos[j] < 1.0

    steps = []
    truncated = False
    rec = truth[0]
    rec_gap = gaps[0]
    for n in range(n_steps + 1):
        status = "ok"
        if n > 0:
            prev = steps[-1]
            if rec_gap > 2.0 + 2.0 * NORM_SLACK:
                status = "domain"
                rec = np.full_like(one, np.nan)
            else:
                rec = half_angle_reconstruct(rec, series_tol)
                if prev.precondition_rho >= 1.0:
                    status = "precondition_violated"
            rec_gap = _gap(rec) if status != "domain" else math.inf
        deviation = operator_norm(rec - truth[n]) if status != "domain" else math.inf
        if status == "ok" and deviation > tol:
            status = "deviation"
        within = eta_index >= 0 and n >= eta_index
        flagged = status in ("precondition_violated", "domain") or not admissible(rec_gap, n)
        steps.append(RefinementStep(
            n=n,
            t=ts[n],
            reconstructed=rec,
            ground_truth=truth[n],
            deviation=deviation,
            norm_gap=gaps[n],
            envelope=envelope[n],
            precondition_rho=rhos[n],
            within_eta=within,
            certified_envelope=envelope[n - eta_index] if within else math.nan,
            status=status,
            flagged=flagged,
        ))
        if status in ("precondition_violated", "domain"):
            truncated = n < n_steps
            break
    return RefinementTrace(t0, float(tol), eta, eta_index, tuple(steps), truncated)


# -- trichotomy classifier ----------------------------------------------------

@dataclass(frozen=True)
class SamplingPlan:
    """Where to sample ``C`` near 0.

    ``geometric``: scales ``t_init 2^-j`` for ``j < n_scales`` with
    ``per_scale`` points in each octave ``(t_j / 2, t_j]``.
    ``convergent``: the group points ``m (p_k b1 - q_k b2)`` from the first
    ``n_convergents`` convergents of ``b2 / b1``, ``m = 1..multiples``.
    """

    kind: str = "geometric"
    t_init: float = 1.0
    n_scales: int = 40
    per_scale: int = 4
    n_convergents: int = 30
    multiples: int = 1

    @classmethod
    def geometric(cls, t_init=1.0, n_scales=40, per_scale=4):
        return cls("geometric", t_init=t_init, n_scales=n_scales, per_scale=per_scale)

    @classmethod
    def convergent(cls, n_convergents=30, multiples=1):
        return cls("convergent", n_convergents=n_convergents, multiples=multiples)


def default_plan(family):
    return SamplingPlan.convergent() if isinstance(family, Hamel) else SamplingPlan.geometric()


@dataclass(frozen=True)
class ClassifierThresholds:
    zero: float = 0.1
    two: float = 1.9
    two_slack: float = 1e-6
    infinity: float = 1e6
    plateau_fraction: float = 0.5


@dataclass(frozen=True)
class Sample:
    index: int
    arg: object          # float t, or (p, q) group coordinates
    abs_t: float
    gap: float           # ||C(t) - 1||, inf on overflow
    norm: float          # ||C(t)||


@dataclass(frozen=True)
class TrichotomyReport:
    """Finite-sample estimate of ``limsup_{t->0} ||C(t) - 1||``.

    ``sup_profile[i] = (delta_i, sup of the gap over samples with |t| <= delta_i)``
    with ``delta`` decreasing.  ``M_estimate`` is the sup of ``||C(t)||``,
    ``l_estimate`` the sup over the smallest window.
    """

    branch: str
    sup_profile: tuple
    witness: Sample
    M_estimate: float
    l_estimate: float
    first_blowup: object = None   # Sample exceeding the infinity threshold, in sampling order
    samples: tuple = field(default=(), repr=False)
    notes: tuple = ()


def _samples(family, plan):
    if isinstance(family, Hamel):
        if plan.kind != "convergent":
            raise InvalidInputError("Hamel families must be sampled along convergents")
        base = convergent_points(family.spec, plan.n_convergents)
        pts = [m * pt for pt in base for m in range(1, plan.multiples + 1)]
        windows = [abs(float(pt)) for pt in base]
        return [((pt.p, pt.q), pt, abs(float(pt))) for pt in pts], windows
    if plan.kind != "geometric":
        raise InvalidInputError("convergent sampling applies to Hamel families only")
    out = []
    windows = []
    for j in range(plan.n_scales):
        tj = plan.t_init * 2.0**-j
        windows.append(tj)
        for i in range(plan.per_scale):
            t = tj * (1.0 - i / (2.0 * plan.per_scale))
            out.append((t, t, t))
    return out, windows


def limsup_estimate(family, plan=None, thresholds=ClassifierThresholds()):
    """Classify ``family`` into branch ``zero``, ``two``, ``infinity`` or ``inconclusive``."""
    plan = plan or default_plan(family)
    raw, windows = _samples(family, plan)
    one = family.identity()
    samples = []
    for i, (label, arg, abs_t) in enumerate(raw):
        try:
            c = family(arg)
            gap, norm = operator_norm(c - one), operator_norm(c)
        except OverflowGuardError:
            gap = norm = math.inf
        samples.append(Sample(i, label, abs_t, gap, norm))

    windows = sorted(set(windows), reverse=True)
    profile = []
    for delta in windows:
        inside = [s.gap for s in samples if s.abs_t <= delta * (1 + 1e-12)]
        profile.append((delta, max(inside) if inside else 0.0))
    sups = [v for _, v in profile]
    witness = max(samples, key=lambda s: s.gap)
    m_est = max(s.norm for s in samples)
    l_est = sups[-1]

    th = thresholds
    blowup = next((s for s in samples if s.gap > th.infinity), None)
    plateau = sups[min(int(len(sups) * th.plateau_fraction), len(sups) - 1)] >= th.two
    tail = sups[len(sups) - max(1, len(sups) // 4):]
    if blowup is not None:
        branch = "infinity"
    elif any(th.two <= v <= 2.0 + th.two_slack for v in sups) and plateau:
        branch = "two"
    elif all(v < th.zero for v in tail) and sups[-1] <= sups[0]:
        branch = "zero"
    else:
        branch = "inconclusive"

    notes = ()
    if isinstance(family, Hamel):
        notes = ("Hamel-type family: a discontinuous cosine function built on a "
                 "rank-two subgroup of the reals as a witness construction",)
    return TrichotomyReport(branch, tuple(profile), witness, m_est, l_est, blowup,
                            tuple(samples), notes)


# -- spectral instruments -----------------------------------------------------

def _cos_minus_one(z):
    """``cos(z) - 1`` without cancellation near 0."""
    s = cmath.sin(z / 2)
    return -2.0 * s * s


@dataclass(frozen=True)
class CharacterRecord:
    """A character of the algebra generated by ``a``: ``chi(a) = a_chi = u + i v``."""

    a_chi: complex
    u: float
    v: float

    def lower_bound(self, t):
        """``|1 - cos(t u) cosh(t v)|``, a lower bound for ``rho(C(t) - 1)``."""
        return abs(1.0 - math.cos(t * self.u) * math.cosh(t * self.v))

    def value(self, t):
        """``chi(C(t)) = cos(t a_chi)``."""
        return cmath.cos(t * self.a_chi)


@dataclass(frozen=True)
class SpectralCharacterization:
    characters: tuple

    @classmethod
    def of(cls, a):
        spec = spectrum(a)
        return cls(tuple(CharacterRecord(z, z.real, z.imag) for z in spec.eigenvalues))


def match_multisets(xs, ys):
    """Greedy minimal-distance pairing; returns ``[(i, j, |xs[i] - ys[j]|)]``."""
    xs, ys = np.asarray(xs, dtype=complex), np.asarray(ys, dtype=complex)
    if xs.shape != ys.shape:
        raise InvalidInputError("multisets differ in size")
    dist = np.abs(xs[:, None] - ys[None, :])
    pairs = []
    for _ in range(len(xs)):
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        pairs.append((int(i), int(j), float(dist[i, j])))
        dist[i, :] = np.inf
        dist[:, j] = np.inf
    return pairs


@dataclass(frozen=True)
class SpectralRow:
    t: float
    rho: float              # rho(C(t) - 1)
    lower_bound: float      # max_chi |1 - cos(t u) cosh(t v)|
    character_sup: float    # max_chi |cos(t a_chi) - 1|
    match_distance: float   # worst eigenvalue-vs-cos(t a_chi) pairing distance
    match_ok: bool


@dataclass(frozen=True)
class SpectralLimsupReport:
    characterization: SpectralCharacterization
    rows: tuple
    identity_holds: bool
    lower_bound_holds: bool
    limit: float            # character_sup at the smallest t

    @property
    def worst_match(self):
        return max((r.match_distance for r in self.rows), default=0.0)

    @property
    def worst_lower_bound_gap(self):
        """max over rows of ``lower_bound - rho`` (should be <= 1e-8)."""
        return max((r.lower_bound - r.rho for r in self.rows), default=-math.inf)


def spectral_limsup(a, t_scales, lower_bound_tol=1e-8):
    """Compare ``rho(C(t) - 1)`` with the character values ``cos(t a_chi)``.

    For each ``t`` the eigenvalues of ``cos(t a)`` are paired with
    ``{cos(t a_chi)}``; a pair farther apart than ``1e-6 (1 + |a_chi|)``
    breaks the identity.
    """
    a = as_matrix(a)
    ts = [float(t) for t in t_scales]
    if any(b >= c for c, b in zip(ts, ts[1:])):
        raise InvalidInputError("t_scales must be strictly decreasing")
    chars = SpectralCharacterization.of(a)
    one = identity(a.shape[0])
    rows = []
    identity_holds = lower_ok = True
    for t in ts:
        ct = matrix_cos(a, t)
        eig = spectrum(ct).eigenvalues
        expected = [ch.value(t) for ch in chars.characters]
        pairs = match_multisets(expected, eig)
        match_ok = all(d <= 1e-6 * (1 + abs(chars.characters[i].a_chi)) for i, _, d in pairs)
        rho = spectral_radius_eig(ct - one)
        lb = max(ch.lower_bound(t) for ch in chars.characters)
        sup = max(abs(_cos_minus_one(t * ch.a_chi)) for ch in chars.characters)
        rows.append(SpectralRow(t, rho, lb, sup, max(d for _, _, d in pairs), match_ok))
        identity_holds &= match_ok
        lower_ok &= rho >= lb - lower_bound_tol
    limit = rows[-1].character_sup if rows else math.nan
    return SpectralLimsupReport(chars, tuple(rows), identity_holds, lower_ok, limit)


@dataclass(frozen=True)
class SpectralZeroTwoReport:
    passed: bool
    bounded: bool
    max_abs_character: float
    final_sup: float
    window: float           # largest sampled t from which the sup stays below threshold
    note: str


def spectral_zero_two_check(a, t_init=1.0, n_scales=64, threshold=1e-8):
    """``sup_chi |cos(t a_chi) - 1| -> 0`` as ``t -> 0`` for a matrix generator."""
    chars = SpectralCharacterization.of(a).characters
    ts = [t_init * 2.0**-j for j in range(int(n_scales))]
    sups = [max(abs(_cos_minus_one(t * ch.a_chi)) for ch in chars) for t in ts]
    window = math.nan
    for t, s in zip(reversed(ts), reversed(sups)):
        if s >= threshold:
            break
        window = t
    final = sups[-1]
    note = ("finite dimension: the characters are the eigenvalues of the generator, "
            "so they are bounded and the dichotomy holds trivially")
    return SpectralZeroTwoReport(final < threshold, True, max(abs(ch.a_chi) for ch in chars),
                                 final, window, note)
