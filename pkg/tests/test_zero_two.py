import math

import mpmath
import numpy as np
import pytest

from cosinelab import families as fam
from cosinelab import zero_two as zt
from cosinelab.algebra import operator_norm
from cosinelab.errors import DomainError, InvalidInputError
from cosinelab.sampling import random_matrix

from conftest import jordan


def _u_mp(n_max, dps=300):
    # naive closed form; enough digits that 1 - sqrt(1 - u/2) does not cancel
    with mpmath.workdps(dps):
        u = [mpmath.mpf(2)]
        for _ in range(n_max):
            u.append(1 - mpmath.sqrt(1 - u[-1] / 2))
        return [float(x) for x in u]


def test_half_angle_examples():
    assert np.allclose(zt.half_angle_reconstruct(np.eye(2)), np.eye(2))
    got = zt.half_angle_reconstruct(np.array([[0.0]]))[0, 0]
    assert got == pytest.approx(math.cos(math.pi / 4), abs=1e-13)
    with pytest.raises(DomainError):
        zt.half_angle_reconstruct(np.array([[-1.5]]))


def test_counterexample_is_flagged():
    f = fam.ScalarCos(2)
    res = zt.check_half_angle(f(math.pi), f(math.pi / 2))
    assert res.status == "precondition_violated"
    assert res.rho == pytest.approx(2.0)
    assert res.deviation == pytest.approx(2.0)


def test_half_angle_bound_examples():
    assert zt.half_angle_bound(-np.eye(2)) == pytest.approx(1.0)
    assert zt.half_angle_bound(np.eye(2)) == 0.0
    assert zt.half_angle_bound(np.array([[0.0]])) == pytest.approx(1 - math.sqrt(0.5))


def test_half_angle_on_random_generators(rng):
    checked = 0
    for _ in range(200):
        a = random_matrix(rng, int(rng.integers(1, 9)), float(rng.uniform(0, 1)))
        t = float(rng.uniform(0, 1))
        f = fam.Generator(a)
        res = zt.check_half_angle(f(t), f(t / 2))
        if res.gap <= 2 and res.rho < 0.99:
            checked += 1
            assert res.status == "pass"
            assert operator_norm(f(t / 2) - f.identity()) <= zt.half_angle_bound(f(t)) + 1e-9
    assert checked > 150


def test_reconstruct_chain_is_self_consistent():
    chain = zt.reconstruct_chain(fam.ScalarCos(1)(1.0), 5)
    assert [s for _, _, s in chain] == ["self-consistent"] * 5
    assert chain[-1][0][0, 0] == pytest.approx(math.cos(1 / 32), abs=1e-12)


def test_contraction_sequence():
    seq = zt.contraction_sequence(60)
    assert seq[0] == 2 and seq[1] == 1
    assert seq[2] == pytest.approx(1 - math.sqrt(0.5), rel=1e-15)
    assert abs(seq[5] / seq[4] - 0.25) <= 0.02
    ref = _u_mp(60)
    assert seq.values == tuple(ref)
    assert all(b < a for a, b in zip(seq.values[1:], seq.values[2:]))
    assert all(seq[n] <= 2 * 0.3 ** (n - 2) for n in range(4, 61))
    assert all(abs(r - 0.25) <= 0.01 for r in seq.ratios[6:])


def test_fixed_point_scan():
    scan = zt.fixed_point_scan()
    assert scan.n_grid == 100_000 and scan.violations == 0 and scan.passed


def test_dyadic_refine_examples(rng):
    tr = zt.dyadic_refine(fam.Generator(np.zeros((3, 3))), 2.0, 6)
    assert all(s.deviation == 0 and s.status == "ok" for s in tr.steps)

    tr = zt.dyadic_refine(fam.ScalarCos(1), 1.0, 10)
    assert len(tr.steps) == 11
    assert max(s.deviation for s in tr.steps) <= 1e-8

    f = fam.Generator(random_matrix(rng, 4, 1.0))
    tr = zt.dyadic_refine(f, 1.0, 8)
    assert tr.eta_index >= 0
    for s in tr.steps:
        if s.within_eta:
            assert s.norm_gap <= s.envelope + 1e-7
            assert s.norm_gap <= s.certified_envelope + 1e-9


def test_dyadic_refine_counterexample():
    tr = zt.dyadic_refine(fam.ScalarCos(2), math.pi, 5)
    assert tr.steps[0].flagged
    assert tr.steps[0].precondition_rho == pytest.approx(2.0)
    assert tr.steps[1].status == "precondition_violated"
    assert tr.truncated and len(tr.steps) == 2


def test_dyadic_refine_rejects_hamel():
    with pytest.raises(InvalidInputError):
        zt.dyadic_refine(fam.Hamel(), 1.0, 3)


def _denominators(n):
    q2, q1, out = 0, 1, [1]
    for _ in range(n - 1):
        q2, q1 = q1, 2 * q1 + q2
        out.append(q1)
    return out


def test_trichotomy_branches():
    rep = zt.limsup_estimate(fam.ScalarCos(3))
    assert rep.branch == "zero" and rep.sup_profile[-1][1] <= 1e-6

    rep = zt.limsup_estimate(fam.Hamel(), zt.SamplingPlan.convergent(30))
    assert rep.branch == "two"
    oracle = max(abs(math.cos(q) - 1) for q in _denominators(13))
    assert oracle >= 1.9
    assert max(abs(math.cos(q) - 1) for q in _denominators(9)) < 1.9  # attained at q = 2378
    assert rep.witness.gap >= 1.9

    rep = zt.limsup_estimate(fam.Hamel(fam.HamelSpec(function="cosh")))
    assert rep.branch == "infinity"
    assert rep.first_blowup.index <= 4
    assert rep.first_blowup.gap == pytest.approx(math.cosh(29) - 1, rel=1e-12)


def test_sup_profile_monotone():
    for f in (fam.ScalarCos(3), fam.ScalarCosh(0.5), fam.Hamel()):
        rep = zt.limsup_estimate(f)
        deltas = [d for d, _ in rep.sup_profile]
        sups = [s for _, s in rep.sup_profile]
        assert all(b < a for a, b in zip(deltas, deltas[1:]))
        assert all(b <= a for a, b in zip(sups, sups[1:]))


def test_sampling_plan_mismatch():
    with pytest.raises(InvalidInputError):
        zt.limsup_estimate(fam.Hamel(), zt.SamplingPlan.geometric())
    with pytest.raises(InvalidInputError):
        zt.limsup_estimate(fam.ScalarCos(1), zt.SamplingPlan.convergent())


def test_spectral_examples():
    ts = [2.0**-j for j in range(20)]
    rep = zt.spectral_limsup(np.zeros((2, 2)), ts)
    assert all(r.rho == 0 and r.character_sup == 0 for r in rep.rows)

    rep = zt.spectral_limsup(np.diag([1, 2 + 1j]), ts)
    for r in rep.rows:
        expect = max(abs(1 - math.cos(r.t)), abs(1 - math.cos(2 * r.t) * math.cosh(r.t)))
        assert r.lower_bound == pytest.approx(expect, rel=1e-14, abs=1e-300)
    assert rep.identity_holds and rep.lower_bound_holds

    j = jordan(1.0, 2)
    rep = zt.spectral_limsup(j, [1.0, 0.5])
    for r in rep.rows:
        assert r.rho == pytest.approx(abs(math.cos(r.t) - 1), abs=1e-12)
        c = fam.Generator(j)(r.t)
        assert operator_norm(c - np.eye(2)) >= r.t * abs(math.sin(r.t))


def test_spectral_random(rng):
    ts = [2.0**-j for j in range(30)]
    for _ in range(20):
        a = random_matrix(rng, int(rng.integers(1, 9)), float(rng.uniform(0, 2)))
        rep = zt.spectral_limsup(a, ts)
        assert rep.worst_match <= 1e-8
        assert rep.worst_lower_bound_gap <= 1e-8
    with pytest.raises(InvalidInputError):
        zt.spectral_limsup(a, [0.1, 0.2])


def test_spectral_zero_two():
    assert zt.spectral_zero_two_check(np.zeros((2, 2))).passed
    rep = zt.spectral_zero_two_check(np.diag([100.0]))
    assert rep.passed and rep.window < 1e-5
    assert zt.spectral_zero_two_check(random_matrix(np.random.default_rng(3), 6)).passed


def test_match_multisets():
    pairs = zt.match_multisets([1, 2, 3j], [3j, 1.0000001, 2])
    assert sorted((i, j) for i, j, _ in pairs) == [(0, 1), (1, 2), (2, 0)]
