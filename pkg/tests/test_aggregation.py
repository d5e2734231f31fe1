import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from rmipa.aggregation import hard_decision, pre_aggregate, rev_reorder, vote_exact, vote_tree
from rmipa.projection import projection_pairs
from rmipa.rm_core import ParameterError


def test_rev_reorder_examples():
    assert rev_reorder(1, 4).tolist() == [[0, 1], [2, 3]]
    U = rev_reorder(11, 16)
    assert U[0].tolist() == [0, 11]
    assert all(U[j].tolist() == [j, j ^ 11] for j in range(1, 8))


@pytest.mark.parametrize("n", [4, 8, 16, 32, 64, 128])
def test_rev_reorder_matches_projection_pairs(n):
    for i in range(1, n):
        np.testing.assert_array_equal(rev_reorder(i, n), projection_pairs(i, n))


def test_rev_reorder_rejects_dummy_index():
    with pytest.raises(ParameterError):
        rev_reorder(0, 8)


def test_pre_aggregate_example():
    out = pre_aggregate(np.array([1.0, -2.0, 3.0, -4.0]), np.array([0, 1]), 1)
    np.testing.assert_array_equal(out, [-2.0, 1.0, 4.0, -3.0])


def test_pre_aggregate_zero_word_swaps_pairs(rng):
    L = rng.standard_normal(16)
    for i in range(1, 16):
        out = pre_aggregate(L, np.zeros(8, dtype=int), i)
        for a, b in projection_pairs(i, 16):
            assert out[a] == L[b] and out[b] == L[a]


def test_pre_aggregate_dummy_and_length_check():
    assert not pre_aggregate(np.ones(8), np.zeros(4, dtype=int), 0).any()
    with pytest.raises(ParameterError):
        pre_aggregate(np.ones(8), np.zeros(3, dtype=int), 1)


@settings(max_examples=150, deadline=None)
@given(arrays(np.float64, 16, elements=st.floats(-10, 10)), arrays(np.int64, 8, elements=st.integers(0, 1)), st.integers(1, 15))
def test_pre_aggregate_preserves_magnitudes(L, y, i):
    out = pre_aggregate(L, y, i)
    np.testing.assert_array_equal(np.sort(np.abs(out)), np.sort(np.abs(L)))


def test_vote_exact_examples(rng):
    v = rng.standard_normal(8)
    np.testing.assert_allclose(vote_exact([v] * 7), v)
    np.testing.assert_allclose(vote_exact([v, -v]), 0)
    vecs = rng.standard_normal((7, 8))
    direct = [sum(vecs[k][z] for k in range(7)) / 7 for z in range(8)]
    np.testing.assert_allclose(vote_exact(vecs), direct, rtol=1e-9)


def test_vote_tree_examples(rng):
    v = rng.standard_normal(8)
    np.testing.assert_allclose(vote_tree([v] * 7), 7 / 8 * v, rtol=1e-12)
    assert not vote_tree(np.zeros((7, 8))).any()


def test_vote_tree_needs_power_of_two_minus_one():
    with pytest.raises(ParameterError):
        vote_tree(np.ones((6, 8)))
    with pytest.raises(ParameterError):
        vote_exact(np.ones((0, 8)))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([8, 64, 128]).flatmap(lambda n: arrays(np.float64, (n - 1, n), elements=st.floats(-20, 20))))
def test_vote_tree_is_scaled_exact_vote(vecs):
    n = vecs.shape[1]
    exact = vote_exact(vecs)
    tree = vote_tree(vecs)
    np.testing.assert_allclose(tree, exact * (n - 1) / n, rtol=1e-9, atol=1e-12)
    nz = np.abs(exact) > 1e-9
    np.testing.assert_array_equal(hard_decision(tree[nz]), hard_decision(exact[nz]))


def test_hard_decision():
    assert hard_decision([0.5, -0.5, 0.0]).tolist() == [0, 1, 0]
    assert not hard_decision(np.ones(16)).any()
    L = np.array([1.0, -2.0, 0.3, -0.1])
    np.testing.assert_array_equal(hard_decision(-L), 1 - hard_decision(L))
