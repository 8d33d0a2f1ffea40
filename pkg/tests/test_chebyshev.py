import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import chebyshev as npcheb

from cosinelab import chebyshev as ch
from cosinelab.algebra import matrix_cos, operator_norm
from cosinelab.errors import InvalidInputError, OverflowGuardError
from cosinelab.sampling import random_matrix


@pytest.mark.parametrize("n", range(0, 31))
def test_coefficients_match_numpy(n):
    # numpy's float coefficients are exact integers up to this degree
    ref = npcheb.cheb2poly([0] * n + [1])
    got = ch.cheb_coeffs(n).coeffs
    assert all(isinstance(c, int) for c in got)
    assert [int(r) for r in ref] == list(got)


def test_binomial_index_is_2k():
    # binom(n, k) would give 3x^2 - 2 for T_2
    assert ch.cheb_coeffs(2).coeffs == (-1, 0, 2)


def test_scalar_examples():
    assert ch.cheb_explicit(1, 0.37) == pytest.approx(0.37)
    assert ch.cheb_explicit(2, 0.5) == pytest.approx(math.cos(2 * math.acos(0.5)))
    assert ch.cheb_explicit(2, 0.5) == pytest.approx(-0.5)
    assert ch.cheb_explicit(5, 0.3) == pytest.approx(math.cos(5 * math.acos(0.3)), abs=1e-12)
    assert ch.cheb_recurrence(0, 0.9) == 1
    assert ch.cheb_recurrence(3, 0.5) == pytest.approx(-1.0, abs=1e-15)
    assert np.array_equal(ch.cheb_recurrence(0, np.zeros((3, 3))), np.eye(3))


def test_matrix_recurrence_matches_explicit(rng):
    for _ in range(10):
        x = random_matrix(rng, 4, float(rng.uniform(0, 1)))
        assert operator_norm(ch.cheb_recurrence(10, x) - ch.cheb_explicit(10, x)) <= 1e-9


def test_triple_agreement_on_grid():
    xs = np.linspace(-1, 1, 1000)
    for n in range(31):
        trig = np.cos(n * np.arccos(xs))
        e = np.array([ch.cheb_explicit(n, x).real for x in xs])
        r = np.array([ch.cheb_recurrence(n, x).real for x in xs])
        assert np.max(np.abs(e - trig)) <= 1e-10
        assert np.max(np.abs(r - trig)) <= 1e-10


def test_extend_cosine_sequence(rng):
    assert np.allclose(ch.extend_cosine_sequence(np.eye(3), 11), np.eye(3))
    c1 = math.cos(1) * np.eye(2)
    assert np.allclose(ch.extend_cosine_sequence(c1, 7), math.cos(7) * np.eye(2), atol=1e-10)
    assert np.allclose(ch.extend_cosine_sequence(c1, -7), math.cos(7) * np.eye(2), atol=1e-10)
    a = random_matrix(rng, 5, 1.0)
    c5 = ch.extend_cosine_sequence(matrix_cos(a, 1), 5)
    assert operator_norm(c5 - matrix_cos(a, 5)) <= 1e-8
    with pytest.raises(InvalidInputError):
        ch.extend_cosine_sequence(c1, 65)


def test_norm_bound_examples():
    assert ch.cheb_norm_bound(2, 1) == 3
    assert ch.cheb_norm_bound(1, 2.5) == 2.5
    assert ch.cheb_norm_bound(0, 7.0) == 1


def test_norm_bound_dominates(rng):
    for _ in range(200):
        n = int(rng.integers(0, 16))
        y = random_matrix(rng, int(rng.integers(1, 6)), float(rng.uniform(0, 1.5)))
        assert operator_norm(ch.cheb_recurrence(n, y)) <= ch.cheb_norm_bound(n, operator_norm(y)) * (1 + 1e-12)


def test_norm_bound_overflow_carries_partial():
    with pytest.raises(OverflowGuardError) as info:
        ch.cheb_norm_bound(400, 10.0)
    assert info.value.partial > 10**300


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.floats(-1, 1))
def test_nesting(m, n, x):
    assert abs(ch.cheb_recurrence(m, ch.cheb_recurrence(n, x)) - ch.cheb_recurrence(m * n, x)) <= 1e-9


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20), st.floats(-1, 1))
def test_sequence_dalembert(m, n, x):
    lhs = ch.cheb_recurrence(m + n, x) + ch.cheb_recurrence(abs(m - n), x)
    assert abs(lhs - 2 * ch.cheb_recurrence(m, x) * ch.cheb_recurrence(n, x)) <= 1e-9


def test_sequence_dalembert_commuting_matrices(rng):
    y = random_matrix(rng, 4, 1.0)
    for m, n in [(3, 5), (7, 2), (6, 6)]:
        lhs = ch.cheb_recurrence(m + n, y) + ch.cheb_recurrence(abs(m - n), y)
        rhs = 2 * ch.cheb_recurrence(m, y) @ ch.cheb_recurrence(n, y)
        assert operator_norm(lhs - rhs) <= 1e-9
