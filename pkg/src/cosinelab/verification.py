"""Seeded invariant suites behind ``cosinelab verify``.

Every check reduces to "worst residual <= tolerance" and yields one
:class:`InvariantResult`.  Tolerances have names (see ``DEFAULT_TOLERANCES``)
so a run configuration can override them.  Trial inputs are drawn from one
PCG64 stream per suite, seeded from the run seed and the suite name, so a
suite's inputs do not depend on which other suites run.
"""

import math
import zlib
from dataclasses import dataclass

import numpy as np

from . import algebra, chebyshev, families, sqrt_series, zero_two
from .sampling import make_rng, random_generator, random_matrix

DEFAULT_TOLERANCES = {
    "submultiplicative": 1e-12,
    "rho_le_norm": 1e-12,
    "gelfand_random": 0.05,
    "gelfand_normal": 1e-9,
    "cos_evenness": 0.0,
    "sqrt_newton": 1e-9,
    "chebyshev": 1e-10,
    "chebyshev_nesting": 1e-9,
    "chebyshev_dalembert": 1e-9,
    "chebyshev_bound": 1e-12,
    "chebyshev_extension": 1e-8,
    "alpha_signs": 0.0,
    "alpha_sum": 2e-2,
    "sqrt_square": 1e-8,
    "sqrt_bound": 1e-9,
    "sqrt_oracle": 1e-8,
    "halfplane": 0.0,
    "dalembert": 1e-9,
    "product_identity": 1e-8,
    "commutation": 1e-10,
    "family_unit_even": 0.0,
    "hamel_dalembert": 1e-6,
    "half_angle": 1e-7,
    "half_angle_bound": 1e-9,
    "counterexample": 0.0,
    "envelope": 1e-9,
    "contraction_ratio": 0.01,
    "fixed_point": 0.0,
    "trichotomy": 0.0,
    "character_identity": 1e-8,
    "character_lower_bound": 1e-8,
    "file_dalembert": 1e-9,
}

DEFAULT_TRIALS = {
    "algebra": 500,
    "chebyshev": 200,
    "sqrt_series": 1000,
    "families": 200,
    "half_angle": 200,
    "envelope": 50,
    "spectral": 100,
}

SUITES = ("algebra", "chebyshev", "sqrt_series", "families", "zero_two")


@dataclass(frozen=True)
class InvariantResult:
    module: str
    name: str
    anchor: str
    passed: bool
    worst: float
    tolerance: float
    trials: int


class Checker:
    """Collects results for one suite."""

    def __init__(self, module, tolerances):
        self.module = module
        self.tolerances = tolerances
        self.results = []

    def record(self, name, anchor, worst, trials, tol_name=None):
        tol = float(self.tolerances[tol_name or name])
        worst = float(worst)
        passed = (not math.isnan(worst)) and worst <= tol
        self.results.append(InvariantResult(self.module, name, anchor, passed, worst, tol, int(trials)))


def _rng(seed, suite):
    return make_rng((int(seed) * 1_000_003 + zlib.crc32(suite.encode())) % 2**64)


def _trials(trials, key, scale):
    return max(1, int(round(trials.get(key, DEFAULT_TRIALS[key]) * scale)))


def suite_algebra(seed, tolerances, trials, scale):
    rng = _rng(seed, "algebra")
    ck = Checker("algebra-core", tolerances)
    n = _trials(trials, "algebra", scale)
    sub = rho = 0.0
    gel_rand = gel_norm = even = 0.0
    sqrt_worst = 0.0
    for i in range(n):
        d = int(rng.integers(1, 9))
        x = random_matrix(rng, d, float(rng.uniform(0.0, 2.0)))
        y = random_matrix(rng, d, float(rng.uniform(0.0, 2.0)))
        nx = algebra.operator_norm(x)
        sub = max(sub, algebra.operator_norm(x @ y) - nx * algebra.operator_norm(y))
        rho = max(rho, algebra.spectral_radius_eig(x) - nx)
        t = float(rng.uniform(-3.0, 3.0))
        even = max(even, float(np.max(np.abs(algebra.matrix_cos(x, -t) - algebra.matrix_cos(x, t)))))
        if i < 100:
            g = random_matrix(rng, 6, float(rng.uniform(0.1, 2.0)))
            gel_rand = max(gel_rand, abs(algebra.spectral_radius_gelfand(g, 12).value
                                         - algebra.spectral_radius_eig(g)))
            u, _ = np.linalg.qr(random_matrix(rng, 6))
            normal = u @ np.diag(random_matrix(rng, 6).diagonal()) @ u.conj().T
            gel_norm = max(gel_norm, abs(algebra.spectral_radius_gelfand(normal, 12).value
                                         - algebra.spectral_radius_eig(normal)))
            w = random_matrix(rng, d, float(rng.uniform(0.0, 0.9)))
            s = algebra.matrix_sqrt_newton(np.eye(d) - w)
            sqrt_worst = max(sqrt_worst, algebra.operator_norm(s @ s - (np.eye(d) - w)))
    m = min(n, 100)
    ck.record("submultiplicative", "||xy|| <= ||x|| ||y||", sub, n)
    ck.record("rho_le_norm", "rho(x) <= ||x||", rho, n)
    ck.record("gelfand_random", "rho(x) = lim ||x^n||^(1/n)", gel_rand, m)
    ck.record("gelfand_normal", "rho(x) = lim ||x^n||^(1/n)", gel_norm, m)
    ck.record("cos_evenness", "C(-t) = C(t)", even, n)
    ck.record("sqrt_newton", "sqrt(x)^2 = x", sqrt_worst, m)
    return ck.results


def suite_chebyshev(seed, tolerances, trials, scale):
    rng = _rng(seed, "chebyshev")
    ck = Checker("chebyshev", tolerances)
    xs = np.linspace(-1.0, 1.0, 1000)
    triple = 0.0
    for n in range(31):
        trig = np.cos(n * np.arccos(xs))
        for x, ref in zip(xs, trig):
            e = chebyshev.cheb_explicit(n, x)
            r = chebyshev.cheb_recurrence(n, x)
            triple = max(triple, abs(e - r), abs(e - ref), abs(r - ref))
    ck.record("chebyshev", "T_n(cos s) = cos(n s)", triple, 31 * len(xs))

    nest = dal = 0.0
    grid = np.linspace(-1.0, 1.0, 41)
    for m in range(9):
        for k in range(9):
            for x in grid:
                tm_tn = chebyshev.cheb_recurrence(m, chebyshev.cheb_recurrence(k, x))
                nest = max(nest, abs(tm_tn - chebyshev.cheb_recurrence(m * k, x)))
                lhs = chebyshev.cheb_recurrence(m + k, x) + chebyshev.cheb_recurrence(abs(m - k), x)
                rhs = 2 * chebyshev.cheb_recurrence(m, x) * chebyshev.cheb_recurrence(k, x)
                dal = max(dal, abs(lhs - rhs))
    ck.record("chebyshev_nesting", "T_m(T_n(x)) = T_mn(x)", nest, 81 * len(grid))
    ck.record("chebyshev_dalembert", "T_{m+n} + T_{|m-n|} = 2 T_m T_n", dal, 81 * len(grid))

    n_trials = _trials(trials, "chebyshev", scale)
    bound = ext = 0.0
    for i in range(n_trials):
        d = int(rng.integers(1, 7))
        y = random_matrix(rng, d, float(rng.uniform(0.0, 1.5)))
        n = int(rng.integers(0, 16))
        val = algebra.operator_norm(chebyshev.cheb_recurrence(n, y))
        b = chebyshev.cheb_norm_bound(n, algebra.operator_norm(y))
        bound = max(bound, (val - b) / max(1.0, b))
        if i < 20:
            a = random_matrix(rng, d, float(rng.uniform(0.0, 1.0)))
            c1 = algebra.matrix_cos(a, 1.0)
            for k in range(21):
                ext = max(ext, algebra.operator_norm(chebyshev.extend_cosine_sequence(c1, k)
                                                     - algebra.matrix_cos(a, k)))
    ck.record("chebyshev_bound", "||T_n(y)|| <= sum |c_k| ||y||^k", bound, n_trials)
    ck.record("chebyshev_extension", "C(n) = T_n(C(1))", ext, min(n_trials, 20) * 21)
    return ck.results


def suite_sqrt_series(seed, tolerances, trials, scale):
    rng = _rng(seed, "sqrt_series")
    ck = Checker("sqrt-series", tolerances)
    co = sqrt_series.alpha_coeffs(2500)
    n = np.arange(1, co.n_max + 1)
    signs = float(np.max(np.maximum(0.0, -((-1.0) ** (n - 1)) * co.alpha[1:])))
    ck.record("alpha_signs", "(-1)^(n-1) alpha_n >= 0", signs, co.n_max)
    total = co.abs_partial[-1]
    ck.record("alpha_sum", "sum |alpha_n| = 1", 1.0 - total if total <= 1.0 else math.inf, co.n_max)

    n_trials = _trials(trials, "sqrt_series", scale)
    sq = bd = orc = 0.0
    half_bad = 0
    for i in range(n_trials):
        d = int(rng.integers(1, 7))
        x = random_matrix(rng, d, float(rng.uniform(0.0, 0.99)))
        res = sqrt_series.matrix_sqrt_series(x, 1e-12)
        y, one = res.value, np.eye(d)
        sq = max(sq, algebra.operator_norm(y @ y - (one - x)))
        bd = max(bd, algebra.operator_norm(one - y) - res.bound)
        if res.norm_x <= 0.9:
            orc = max(orc, algebra.operator_norm(y - algebra.matrix_sqrt_newton(one - x)))
        if i < 200:
            xh = random_matrix(rng, d, float(rng.uniform(0.0, 0.95)))
            half_bad += not sqrt_series.halfplane_check(xh)
    ck.record("sqrt_square", "(sqrt(1 - x))^2 = 1 - x", sq, n_trials)
    ck.record("sqrt_bound", "||1 - sqrt(1 - x)|| <= 1 - sqrt(1 - ||x||)", bd, n_trials)
    ck.record("sqrt_oracle", "sqrt(1 - x) series = Newton root", orc, n_trials)
    ck.record("halfplane", "Re sqrt(1 - chi(x)) >= 0", half_bad, min(n_trials, 200))
    return ck.results


def suite_families(seed, tolerances, trials, scale):
    rng = _rng(seed, "families")
    ck = Checker("cosine-families", tolerances)
    n_fam = _trials(trials, "families", scale)
    dal = prod = comm = unit_even = 0.0
    for _ in range(n_fam):
        f = families.Generator(random_generator(rng, 8, 2.0))
        one = f.identity()
        unit_even = max(unit_even, float(np.max(np.abs(f(0.0) - one))))
        for s, t in rng.uniform(-3.0, 3.0, size=(100, 2)):
            cs, ct, cp, cm = f(s), f(t), f(s + t), f(s - t)
            dal = max(dal, algebra.operator_norm(cp + cm - 2.0 * cs @ ct))
            dd = cs - ct
            prod = max(prod, algebra.operator_norm((one - cm) @ (one - cp) - dd @ dd))
            comm = max(comm, algebra.operator_norm(cs @ ct - ct @ cs))
            unit_even = max(unit_even, float(np.max(np.abs(f(-s) - cs))))
    ck.record("dalembert", "C(s+t) + C(s-t) = 2 C(s) C(t)", dal, n_fam * 100)
    ck.record("product_identity", "(1 - C(s-t))(1 - C(s+t)) = (C(s) - C(t))^2", prod, n_fam * 100)
    ck.record("commutation", "C(s) C(t) = C(t) C(s)", comm, n_fam * 100)
    ck.record("family_unit_even", "C(0) = 1, C(-t) = C(t)", unit_even, n_fam * 101)

    worst = 0.0
    count = 0
    for function in ("cos", "cosh"):
        h = families.Hamel(families.HamelSpec(function=function))
        for p1, q1, p2, q2 in rng.integers(-50, 51, size=(200, 4)):
            s, t = h.point(p1, q1), h.point(p2, q2)
            mags = [abs(h(x)[0, 0]) for x in (s, t, s + t, s - t)]
            r = families.dalembert_residual(h, s, t)
            worst = max(worst, r / (1.0 + max(mags)))
            if (h(-s) != h(s)).any():
                worst = math.inf
            count += 1
    ck.record("hamel_dalembert", "C(s+t) + C(s-t) = 2 C(s) C(t) on Z + Z sqrt2", worst, count)
    return ck.results


def suite_zero_two(seed, tolerances, trials, scale):
    rng = _rng(seed, "zero_two")
    ck = Checker("zero-two-lab", tolerances)

    n_half = _trials(trials, "half_angle", scale)
    dev = bnd = 0.0
    checked = 0
    for _ in range(n_half):
        a = random_generator(rng, 8, 1.0)
        t = float(rng.uniform(0.0, 1.0)) or 1.0
        f = families.Generator(a)
        ct, ch = f(t), f(t / 2)
        one = f.identity()
        if algebra.operator_norm(ct - one) > 2.0:
            continue
        if algebra.spectral_radius_eig(ch - one) >= 0.99:
            continue
        checked += 1
        dev = max(dev, algebra.operator_norm(zero_two.half_angle_reconstruct(ct) - ch))
        bnd = max(bnd, algebra.operator_norm(ch - one) - zero_two.half_angle_bound(ct))
    ck.record("half_angle", "C(t/2) = sqrt(1 - (1 - C(t))/2)", dev, checked)
    ck.record("half_angle_bound", "||C(t/2) - 1|| <= 1 - sqrt(1 - ||C(t) - 1||/2)", bnd, checked)

    counter = zero_two.check_half_angle(
        families.ScalarCos(2)(math.pi), families.ScalarCos(2)(math.pi / 2))
    ck.record("counterexample", "rho(C(t/2) - 1) < 1 is needed",
              0.0 if counter.status == "precondition_violated" else 1.0, 1)

    n_env = _trials(trials, "envelope", scale)
    env = 0.0
    for _ in range(n_env):
        a = random_matrix(rng, int(rng.integers(1, 9)), 1.0)
        tr = zero_two.dyadic_refine(families.Generator(a), 1.0, 8)
        for s in tr.steps:
            if s.within_eta:
                env = max(env, s.norm_gap - s.envelope, s.norm_gap - s.certified_envelope)
        if tr.eta_index < 0:
            env = math.inf
    ck.record("envelope", "sup_{|t| <= 2^-n eta} ||C(t) - 1|| <= u_n", env, n_env)

    seq = zero_two.contraction_sequence(60)
    ratio = max(abs(r - 0.25) for r in seq.ratios[6:])
    ck.record("contraction_ratio", "u_{n+1} = 1 - sqrt(1 - u_n/2), u_{n+1}/u_n -> 1/4", ratio, 55)

    scan = zero_two.fixed_point_scan()
    ck.record("fixed_point", "l <= 1 - sqrt(1 - l/2) forces l = 0", scan.violations, scan.n_grid)

    wrong = 0
    wrong += zero_two.limsup_estimate(families.ScalarCos(3)).branch != "zero"
    wrong += zero_two.limsup_estimate(families.Hamel()).branch != "two"
    wrong += zero_two.limsup_estimate(
        families.Hamel(families.HamelSpec(function="cosh"))).branch != "infinity"
    ck.record("trichotomy", "limsup |c(t) - 1| in {0, 2, +inf}", wrong, 3)

    n_spec = _trials(trials, "spectral", scale)
    match = lower = 0.0
    ts = [2.0**-j for j in range(0, 30)]
    for _ in range(n_spec):
        a = random_generator(rng, 8, 2.0)
        rep = zero_two.spectral_limsup(a, ts)
        match = max(match, rep.worst_match)
        lower = max(lower, rep.worst_lower_bound_gap)
    ck.record("character_identity", "chi(C(t)) = cos(t a_chi)", match, n_spec)
    ck.record("character_lower_bound", "rho(C(t) - 1) >= |1 - cos(t u) cosh(t v)|", lower, n_spec)
    return ck.results


def suite_family_files(paths, tolerances, seed):
    """d'Alembert residual on user-supplied family files (real families)."""
    rng = _rng(seed, "family_files")
    ck = Checker("family-files", tolerances)
    for path in paths:
        f = families.load_family(path)
        worst = 0.0
        if f.real_argument:
            for s, t in rng.uniform(-3.0, 3.0, size=(100, 2)):
                worst = max(worst, families.dalembert_residual(f, s, t))
        else:
            for p1, q1, p2, q2 in rng.integers(-50, 51, size=(100, 4)):
                s, t = f.point(p1, q1), f.point(p2, q2)
                mag = max(abs(f(x)[0, 0]) for x in (s, t, s + t, s - t))
                worst = max(worst, families.dalembert_residual(f, s, t) / (1.0 + mag))
        ck.record(f"file:{path}", "C(s+t) + C(s-t) = 2 C(s) C(t)", worst, 100, "file_dalembert")
    return ck.results


_SUITE_FUNCS = {
    "algebra": suite_algebra,
    "chebyshev": suite_chebyshev,
    "sqrt_series": suite_sqrt_series,
    "families": suite_families,
    "zero_two": suite_zero_two,
}


def run_suites(seed, tolerances=None, suites=SUITES, trials=None, scale=1.0, family_files=()):
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    results = []
    for name in suites:
        results.extend(_SUITE_FUNCS[name](seed, tol, trials or {}, scale))
    if family_files:
        results.extend(suite_family_files(family_files, tol, seed))
    return results
