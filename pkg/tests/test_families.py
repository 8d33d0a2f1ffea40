import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cosinelab import families as fam
from cosinelab.algebra import matrix_cos
from cosinelab.errors import ArgumentTypeError, InvalidInputError, PrecisionBudgetError
from cosinelab.sampling import random_generator, random_matrix

SQRT2 = fam.HamelSpec()


def _cf_denominators(a0, partials, count):
    # q_{-1} = 0, q_0 = 1, q_k = a_k q_{k-1} + q_{k-2}
    qs, q2, q1 = [], 0, 1
    qs.append(1)
    for a in partials[: count - 1]:
        q2, q1 = q1, a * q1 + q2
        qs.append(q1)
    return qs


def test_identity_at_zero():
    a = np.array([[0.3, 1.0], [0.0, -2.0]])
    for f, zero in [
        (fam.Generator(a), 0.0),
        (fam.ScalarCos(2.0), 0.0),
        (fam.ScalarCosh(1.5), 0.0),
        (fam.Hamel(SQRT2), SQRT2.point(0, 0)),
    ]:
        assert np.array_equal(f(zero), f.identity())


def test_evaluation_examples():
    assert fam.ScalarCos(2)(math.pi)[0, 0] == pytest.approx(1.0, abs=1e-15)
    assert fam.Hamel(SQRT2)(SQRT2.point(3, -2))[0, 0] == pytest.approx(math.cos(2))
    a = random_matrix(np.random.default_rng(1), 4, 1.0)
    assert np.array_equal(fam.evaluate(fam.Generator(a), 0.7), matrix_cos(a, 0.7))
    assert fam.ScalarCosh(2)(0.5)[0, 0] == pytest.approx(math.cosh(1.0))


def test_hamel_rejects_reals():
    with pytest.raises(ArgumentTypeError):
        fam.Hamel(SQRT2)(0.5)
    with pytest.raises(ArgumentTypeError):
        fam.ScalarCos(1)(SQRT2.point(1, 1))


def test_whitelist():
    with pytest.raises(InvalidInputError):
        fam.HamelSpec(irrational="e")
    for name in ("sqrt2", "golden", "pi"):
        fam.HamelSpec(irrational=name)


def test_evenness_every_realization(rng):
    a = random_matrix(rng, 3, 1.5)
    for f in (fam.Generator(a), fam.ScalarCos(1 + 2j), fam.ScalarCosh(0.7)):
        assert np.array_equal(f(0.31), f(-0.31))
    h = fam.Hamel(fam.HamelSpec(function="cosh", phi_coeffs=(0.3, 1.1)))
    assert np.array_equal(h(h.point(4, -7)), h(h.point(-4, 7)))


def test_dalembert_generator(rng):
    for _ in range(20):
        f = fam.Generator(random_generator(rng, 8, 2.0))
        for s, t in rng.uniform(-3, 3, size=(100, 2)):
            assert fam.dalembert_residual(f, s, t) <= 1e-9
    assert fam.dalembert_residual(f, 0.0, 0.0) == 0.0


def test_dalembert_hamel_cosh():
    h = fam.Hamel(fam.HamelSpec(function="cosh"))
    for p1, q1, p2, q2 in [(50, -50, -3, 17), (10, 20, 30, -40), (-50, 50, 50, -50), (7, 8, 9, 10)]:
        s, t = h.point(p1, q1), h.point(p2, q2)
        scale = 1 + max(abs(h(x)[0, 0]) for x in (s, t, s + t, s - t))
        assert fam.dalembert_residual(h, s, t) <= 1e-6 * scale


def test_product_identity():
    f = fam.ScalarCos(1.0)
    assert fam.product_identity_residual(f, 0.7, 0.3) <= 1e-12
    assert fam.product_identity_residual(f, 0.4, 0.4) == 0.0


def test_product_identity_generator(rng):
    f = fam.Generator(random_generator(rng, 6, 2.0))
    for s, t in rng.uniform(-3, 3, size=(100, 2)):
        assert fam.product_identity_residual(f, s, t) <= 1e-8


def test_commutation(rng):
    assert fam.commutation_residual(fam.ScalarCos(3.0), 0.2, 1.7) == 0.0
    f = fam.Generator(random_matrix(rng, 5, 2.0))
    for s, t in rng.uniform(-3, 3, size=(50, 2)):
        assert fam.commutation_residual(f, s, t) <= 1e-10
    assert fam.commutation_residual(f, 0.0, 1.3) <= 1e-15


def test_convergents_sqrt2():
    cs = fam.convergents(SQRT2.xi, 12)
    assert [q for _, q in cs] == _cf_denominators(1, [2] * 20, 12)
    assert [q for _, q in cs[:5]] == [1, 2, 5, 12, 29]
    p, q = cs[3]
    assert (p, q) == (17, 12)
    with mpmath.workdps(60):
        err = abs(p - q * mpmath.sqrt(2))
    assert float(err) == pytest.approx(0.0294, abs=1e-4)
    assert err < mpmath.mpf(1) / cs[4][1]


def test_convergents_golden_are_fibonacci():
    cs = fam.convergents(fam.HamelSpec(irrational="golden").xi, 15)
    fib = [1, 1]
    while len(fib) < 15:
        fib.append(fib[-1] + fib[-2])
    assert [q for _, q in cs] == fib


def test_convergent_budget():
    with pytest.raises(PrecisionBudgetError) as info:
        fam.convergents(SQRT2.xi, 200)
    assert info.value.max_supported is not None


def test_convergent_points_tend_to_zero():
    pts = fam.convergent_points(SQRT2, 30)
    mags = [abs(float(p)) for p in pts]
    assert all(b < a for a, b in zip(mags, mags[1:]))
    assert mags[-1] < 1e-10


@settings(max_examples=50, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_group_point_embedding(p, q):
    pt = SQRT2.point(p, q)
    with mpmath.workdps(80):
        ref = p + q * mpmath.sqrt(2)
        assert abs(pt.embedded_value - ref) <= mpmath.mpf("1e-50") * (1 + abs(ref))
    assert (pt + (-pt)).p == 0 and (pt - pt).q == 0
    assert (3 * pt).p == 3 * p


@pytest.mark.parametrize("family", [
    fam.Generator(np.array([[1.0, 2.0], [0.5, -1j]])),
    fam.ScalarCos(2.5),
    fam.ScalarCosh(1 - 1j),
    fam.Hamel(fam.HamelSpec(b1=2.0, irrational="pi", phi_coeffs=(0.5, -1.0), function="cosh")),
])
def test_family_file_roundtrip(family, tmp_path):
    path = tmp_path / "f.json"
    fam.save_family(path, family)
    back = fam.load_family(path)
    assert fam.family_to_dict(back) == fam.family_to_dict(family)


def test_family_file_errors(tmp_path):
    with pytest.raises(InvalidInputError):
        fam.family_from_dict({"kind": "nope"})
    with pytest.raises(InvalidInputError):
        fam.family_from_dict({"kind": "scalar_cos"})
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(InvalidInputError):
        fam.load_family(bad)
