"""Entrywise domination, the constant majorant, and the bounds built on them."""

import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from liemeasure.linalg import matrix_exp, operator_norm
from liemeasure.norms import (
    check_exp_monotone,
    inverse_triangle_sum,
    is_subordinate,
    norm_majorant,
    partition_product_bound,
    rank_one_exp,
    total_variation_bound,
)
from liemeasure.sampling import random_diagonal_partition, random_matrix, random_nonneg


def test_is_subordinate_basic():
    m = np.array([[1.0, -2.0], [0.0, 1.0]], dtype=complex)
    s = np.array([[1.0, 2.0], [0.0, 1.0]])
    w = is_subordinate(m, s)
    assert w.holds and w.slack == pytest.approx(0.0, abs=1e-15)
    w2 = is_subordinate(m, np.array([[1.0, 1.9], [0.0, 1.0]]))
    assert not w2.holds
    assert w2.worst_pair == (0, 1)
    assert w2.slack == pytest.approx(-0.1, abs=1e-12)


def test_is_subordinate_rejects_negative_majorant():
    with pytest.raises(ValueError):
        is_subordinate(np.eye(2, dtype=complex), np.array([[1.0, 0.0], [0.0, -1.0]]))


def test_is_subordinate_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        is_subordinate(np.eye(2, dtype=complex), np.ones((3, 3)))


def test_norm_majorant_is_constant_at_the_norm(rng):
    b = random_matrix(rng, 3, scale=2.0)
    r = norm_majorant(b)
    c = operator_norm(b)
    assert np.abs(r - c).max() <= 1e-14 * max(1.0, c)
    assert is_subordinate(b, r).holds


def test_rank_one_exp_matches_series():
    # series oracle: sum_k R^k / k! truncated far beyond convergence
    for n, c in ((2, 0.3), (3, 1.0), (4, 2.5)):
        r = np.full((n, n), c)
        series = np.eye(n)
        term = np.eye(n)
        for k in range(1, 60):
            term = term @ r / k
            series = series + term
        got = rank_one_exp(r)
        assert np.abs(got - series).max() <= 1e-12 * math.exp(n * c)


def test_rank_one_exp_agrees_with_expm(rng):
    for c in (0.1, 1.0, 5.0):
        for n in range(2, 7):
            r = np.full((n, n), c)
            got = rank_one_exp(r)
            want = matrix_exp(r.astype(complex)).real
            assert np.abs(got - want).max() <= 1e-11 * max(1.0, math.exp(n * c))


def test_rank_one_exp_rejects_uneven_or_negative():
    with pytest.raises(ValueError):
        rank_one_exp(np.array([[1.0, 2.0], [1.0, 1.0]]))
    with pytest.raises(ValueError):
        rank_one_exp(np.full((2, 2), -0.5))


def test_check_exp_monotone_known_pair():
    x = np.array([[1.0, 0.5], [0.5, 1.0]])
    y = np.array([[0.5, -0.5], [0.25, 1.0]], dtype=complex)
    assert check_exp_monotone(x, y).holds


def test_check_exp_monotone_rejects_bad_preconditions():
    x = np.array([[1.0, -0.5], [0.5, 1.0]])
    with pytest.raises(ValueError):
        check_exp_monotone(x, x.astype(complex) * 0.5)
    good = np.abs(x)
    with pytest.raises(ValueError):
        check_exp_monotone(good, (good * 2).astype(complex))


def test_inverse_triangle_sum(rng):
    parts = [random_nonneg(rng, 3) for _ in range(4)]
    lhs, rhs = inverse_triangle_sum(parts)
    assert lhs == pytest.approx(sum(operator_norm(p) for p in parts), abs=1e-12)
    total = np.add.reduce(np.stack(parts), axis=0)
    assert rhs == pytest.approx(3 * operator_norm(total), abs=1e-12)
    assert lhs <= rhs + 1e-10


def test_partition_product_bound_trivial_partition(rng):
    r = random_nonneg(rng, 3, scale=0.8)
    projectors = np.eye(3)[np.newaxis]
    sum_norms, bound = partition_product_bound(projectors, r, 4)
    # one part: the sum collapses to e^r itself
    assert sum_norms == pytest.approx(operator_norm(matrix_exp(r.astype(complex))), rel=1e-12)
    assert bound == pytest.approx(3 * operator_norm(matrix_exp(r.astype(complex))), rel=1e-12)


def test_partition_product_bound_telescopes(rng):
    for _ in range(5):
        n = int(rng.integers(2, 5))
        parts = int(rng.integers(2, 4))
        projectors = random_diagonal_partition(rng, n, parts)
        r = random_nonneg(rng, n, scale=1.0)
        count = int(rng.integers(1, 5))
        sum_norms, bound = partition_product_bound(projectors, r, count)
        assert sum_norms <= bound + 1e-8


def test_partition_product_bound_rejects_non_partition(rng):
    projectors = np.stack([np.eye(2), np.eye(2)])
    with pytest.raises(ValueError):
        partition_product_bound(projectors, random_nonneg(rng, 2), 2)


def test_total_variation_bound_formula():
    b = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    assert total_variation_bound(2, b) == pytest.approx(2 * math.exp(2.0), rel=1e-14)
    assert total_variation_bound(3, np.zeros((3, 3), dtype=complex)) == pytest.approx(3.0)


@seed(20260816)
@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=10**6))
def test_domination_is_reflexive_on_nonneg(n, salt):
    rng = np.random.default_rng(salt)
    s = random_nonneg(rng, n, scale=2.0)
    assert is_subordinate(s.astype(complex), s).holds


@seed(20260816)
@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=10**6))
def test_scaling_preserves_domination(n, salt):
    rng = np.random.default_rng(salt)
    s = random_nonneg(rng, n, scale=1.5)
    m = s * rng.uniform(0.0, 1.0)
    assert is_subordinate(m.astype(complex), s).holds
