import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tensor_melon.errors import RankMismatch, VertexNotFound
from tensor_melon.trees import (
    ColoredTree, TreeSum, all_trees, bracket, bracket_trees, canonical_tree,
    cancellation_disjoint_vertices, cancellation_nested, jacobi_defect, join, join_maps,
    non_associativity_witness, parse_tree, random_tree, serialize,
)

ROOT3 = ColoredTree.leaf(3)


def T(text, rank=3):
    return parse_tree(text, rank)


@st.composite
def trees(draw, rank=3, max_vertices=6):
    return random_tree(rank, max_vertices, draw(st.randoms(use_true_random=False)))


def test_serialization_examples():
    assert serialize(ROOT3) == "()"
    t = ColoredTree((ColoredTree.leaf(3), ColoredTree.leaf(3), None))
    assert canonical_tree(t) == "(1:(), 2:())"
    # children given out of color order still serialize in order
    assert serialize(T("(2:(), 1:())")) == "(1:(), 2:())"


@pytest.mark.parametrize("bad", ["(", "(1:()", "(4:())", "(1:(), 1:())", "() x", "1:()"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_tree(bad, 3)


@settings(max_examples=200)
@given(trees())
def test_parse_round_trip(t):
    assert parse_tree(serialize(t), 3) == t
    assert len(t.vertices()) == t.size()


def test_subtree_missing():
    with pytest.raises(VertexNotFound):
        T("(1:())").subtree((2,))
    with pytest.raises(VertexNotFound):
        join(ROOT3, (1,), ROOT3)


def test_join_with_bare_root():
    t = T("(1:(2:()), 3:())")
    for v in t.vertices():
        assert join(t, v, ROOT3) == t
    assert join(ROOT3, (), t) == t


def test_join_chain_of_three():
    assert join(T("(1:())"), (), T("(1:())")) == T("(1:(1:()))")


def test_join_reattaches_at_path_end():
    # the color-2 branch of the root slides below the color-2 chain of t2
    t1 = T("(1:(), 2:(3:()))")
    t2 = T("(2:(2:()), 3:())")
    assert join(t1, (), t2) == T("(1:(), 2:(2:(2:(3:()))), 3:())")


def test_join_inner_vertex():
    t1 = T("(1:(2:()))")
    assert join(t1, (1,), T("(2:(), 3:())")) == T("(1:(2:(2:()), 3:()))")


def test_join_rank_mismatch():
    with pytest.raises(RankMismatch):
        join(ROOT3, (), ColoredTree.leaf(2))


@settings(max_examples=200, deadline=None)
@given(trees(), trees(), st.data())
def test_join_size_and_maps(t1, t2, data):
    v = data.draw(st.sampled_from(t1.vertices()))
    res, m1, m2 = join_maps(t1, v, t2)
    assert res.size() == t1.size() + t2.size() - 1
    assert m1[v] == m2[()] == v
    images = set(m1.values()) | set(m2.values())
    assert images == set(res.vertices())
    for x in t1.vertices():
        res.subtree(m1[x])


def test_bracket_examples():
    t = T("(1:())")
    assert bracket(t, t) == TreeSum(3)
    assert bracket(ROOT3, ROOT3) == TreeSum(3)
    assert bracket(t, ROOT3) == TreeSum.basis(t)
    # the two root joins coincide and cancel
    assert bracket_trees(T("(1:())"), T("(2:())")) == TreeSum(3, {
        T("(1:(2:()))"): 1, T("(2:(1:()))"): -1,
    })


def test_bracket_rank_mismatch():
    with pytest.raises(RankMismatch):
        bracket(ROOT3, ColoredTree.leaf(2))


@settings(max_examples=100, deadline=None)
@given(trees(max_vertices=4), trees(max_vertices=4), trees(max_vertices=4), st.integers(-3, 3))
def test_bracket_bilinear_antisymmetric(a, b, c, k):
    assert bracket(a, b) == -bracket(b, a)
    lhs = bracket(TreeSum.basis(a) + k * TreeSum.basis(b), c)
    assert lhs == bracket(a, c) + k * bracket(b, c)


def test_tree_sum_drops_zero():
    s = TreeSum.basis(ROOT3) - TreeSum.basis(ROOT3)
    assert not s and len(s) == 0 and repr(s) == "0"


def test_all_trees_counts():
    # rooted 3-ary colored trees: 1, 3, 12, 55 by size
    sizes = [t.size() for t in all_trees(3, 4)]
    assert [sizes.count(n) for n in range(1, 5)] == [1, 3, 12, 55]


@pytest.mark.parametrize("rank,max_v", [(1, 5), (2, 4), (3, 3)])
def test_jacobi_exhaustive_small(rank, max_v):
    ts = all_trees(rank, max_v)
    for t1, t2, t3 in itertools.combinations_with_replacement(ts, 3):
        assert not jacobi_defect(t1, t2, t3)


def test_jacobi_repeated_tree():
    t = T("(1:(2:()), 3:())")
    assert not jacobi_defect(t, t, T("(2:())"))


def test_jacobi_random():
    rng = random.Random(99)
    for _ in range(60):
        ts = [random_tree(3, 6, rng) for _ in range(3)]
        assert not jacobi_defect(*ts)


@settings(max_examples=60, deadline=None)
@given(trees(max_vertices=4), trees(max_vertices=4), trees(max_vertices=4))
def test_cancellation_identities(t1, t2, t3):
    plus, minus = cancellation_disjoint_vertices(t1, t2, t3)
    assert plus == minus
    plus, minus = cancellation_nested(t1, t2, t3)
    assert plus == minus
    plus, minus = cancellation_nested(t1, t3, t2)
    assert plus == minus


def test_non_associativity_witness():
    w = non_associativity_witness(3)
    assert w is not None
    t1, t2, t3 = T(w["t1"]), T(w["t2"]), T(w["t3"])
    v, x = tuple(w["v"]), tuple(w["w"])
    left_base, m1, _ = join_maps(t1, v, t2)
    left = join(left_base, m1[x], t3)
    right = join(t1, v, join(t2, x, t3))
    assert left != right
    assert serialize(left) == w["left"] and serialize(right) == w["right_by_path"]
