import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from beliefhc.exceptions import BeliefHCError, InvalidK, TooFewObjects
from beliefhc.hac import Dendrogram, Merge, Partition, cophenetic, cut, hac_cluster

import oracles

small_data = arrays(np.float64, st.tuples(st.integers(2, 8), st.integers(1, 3)), elements=st.floats(-20, 20))


def test_three_points_single_link():
    d = hac_cluster([0.0, 1.0, 10.0], "single")
    assert [(m.left, m.right, m.index, m.node) for m in d.merges] == [(0, 1, 1.0, 3), (2, 3, 9.0, 4)]


def test_three_points_matches_brute_force():
    # every merge order of three points, keep the one that is greedy-closest
    pts = [(0.0,), (1.0,), (10.0,)]
    assert oracles.hac_oracle(pts, oracles.single_link) == [(0, 1, 1.0), (2, 3, 9.0)]


def test_identical_points_merge_at_zero():
    d = hac_cluster([[1.0, 1.0], [1.0, 1.0], [4.0, 5.0]])
    assert d.merges[0].index == 0.0


def test_two_points():
    d = hac_cluster([[0, 0], [3, 4]], "ward")
    assert len(d.merges) == 1
    assert d.merges[0].index == pytest.approx(12.5)
    assert hac_cluster([[0, 0], [3, 4]], "single").merges[0].index == 5.0


def test_too_few():
    with pytest.raises(TooFewObjects):
        hac_cluster([[0.0]])


def test_cut_extremes():
    d = hac_cluster([0.0, 1.0, 10.0, 11.5])
    assert len(cut(d, 4)) == 4
    assert cut(d, 1).canonical() == {frozenset(range(4))}


def test_cut_two_clusters():
    d = hac_cluster([0.0, 1.0, 10.0])
    assert cut(d, 2).canonical() == {frozenset({0, 1}), frozenset({2})}


@pytest.mark.parametrize("k", [0, 5, 2.5])
def test_cut_invalid(k):
    with pytest.raises(InvalidK):
        cut(hac_cluster([0.0, 1.0, 10.0, 11.0]), k)


def test_initial_partition_leaves():
    x = [0.0, 0.1, 5.0, 5.2, 20.0]
    init = Partition(5, {0: (0, 1), 1: (2, 3), 2: (4,)})
    d = hac_cluster(x, "single", init)
    assert d.n_leaves == 3 and d.leaves == ((0, 1), (2, 3), (4,))
    assert d.merges[0].left == 0 and d.merges[0].right == 1
    assert d.merges[0].index == pytest.approx(4.9)
    assert cut(d, 2).canonical() == {frozenset({0, 1, 2, 3}), frozenset({4})}
    assert cut(d, 3).canonical() == init.canonical()


def test_tie_break_prefers_smallest_pair():
    # equilateral triangle: all distances equal
    x = [[0, 0], [1, 0], [0.5, np.sqrt(3) / 2]]
    assert (hac_cluster(x).merges[0].left, hac_cluster(x).merges[0].right) == (0, 1)


def test_dendrogram_validation():
    with pytest.raises(BeliefHCError):
        Dendrogram(3, (Merge(0, 1, 1.0, 5),))
    with pytest.raises(BeliefHCError):
        Dendrogram(3, (Merge(0, 1, 1.0, 3), Merge(0, 2, 2.0, 4)))
    # stopping early is allowed
    assert len(Dendrogram(3, (Merge(0, 1, 1.0, 3),)).merges) == 1


def test_partition_validation():
    with pytest.raises(BeliefHCError):
        Partition(3, {0: (0, 1)})
    p = Partition.from_labels(["b", "a", "b"])
    assert p.clusters == {0: (0, 2), 1: (1,)}
    assert list(p.cluster_of) == [0, 1, 0]


@given(small_data)
def test_single_link_matches_exhaustive_oracle(x):
    got = [(m.left, m.right, m.index) for m in hac_cluster(x, "single").merges]
    expected = oracles.hac_oracle([tuple(r) for r in x], oracles.single_link)
    assert [g[:2] for g in got] == [e[:2] for e in expected]
    assert np.allclose([g[2] for g in got], [e[2] for e in expected], rtol=1e-12, atol=1e-12)


@given(small_data)
def test_complete_link_matches_exhaustive_oracle(x):
    complete = lambda A, B: max(np.linalg.norm(np.subtract(p, q)) for p in A for q in B)
    got = [(m.left, m.right) for m in hac_cluster(x, "complete").merges]
    expected = oracles.hac_oracle([tuple(r) for r in x], complete)
    assert got == [e[:2] for e in expected]


@given(small_data, st.sampled_from(["single", "complete"]))
def test_heights_monotone(x, link):
    h = hac_cluster(x, link).heights
    assert np.all(np.diff(h) >= -1e-12)


@given(small_data)
def test_cophenetic_is_ultrametric(x):
    c = cophenetic(hac_cluster(x, "single"))
    n = len(x)
    for i, j, k in itertools.permutations(range(n), 3):
        assert c[i, j] <= max(c[i, k], c[j, k]) + 1e-12


@given(small_data, st.sampled_from(["single", "complete", "average", "ward"]))
def test_cut_gives_k_clusters(x, link):
    d = hac_cluster(x, link)
    for k in range(1, len(x) + 1):
        p = cut(d, k)
        assert len(p) == k
        assert sorted(i for m in p.clusters.values() for i in m) == list(range(len(x)))
