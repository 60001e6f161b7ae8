import random

import pytest
from hypothesis import given, settings, strategies as st

from tensor_melon.bubbles import labeled_configurations
from tensor_melon.errors import BadLine, Disconnected, NotMelonic, SizeLimitExceeded, TooFewColors
from tensor_melon.graph import (
    are_isomorphic, build, canonical_form, dipole, is_connected,
)
from tensor_melon.jackets import degree
from tensor_melon.melons import (
    _tree_from_graph_any_order, count_melonic, insert_dipole, is_melonic, iter_melons,
    melon_classes, melon_to_tree, random_melon, replay_certificate, tree_to_melon,
)
from tensor_melon.trees import ColoredTree, parse_tree, random_tree


def degree_zero_classes(c, p):
    """Independent count: every labeled configuration, filtered by degree, up to isomorphism."""
    out = set()
    for g in labeled_configurations(c, p):
        if is_connected(g) and degree(g).degree == 0:
            out.add(canonical_form(g))
    return out


def test_dipole_is_trivially_melonic():
    for c in (4, 5, 6):
        cert = is_melonic(dipole(c))
        assert cert is not None and cert.contraction_sequence == ()
        assert cert.trivial


def test_three_colors_rejected():
    with pytest.raises(TooFewColors):
        is_melonic(dipole(3))


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        is_melonic(build(4, 2, [[0, 1]] * 4))


def test_positive_degree_not_melonic():
    bad = [g for g in labeled_configurations(4, 3) if is_connected(g) and degree(g).degree > 0]
    assert bad
    for g in bad:
        assert is_melonic(g) is None


def test_certificate_replays():
    rng = random.Random(5)
    for _ in range(50):
        g = random_melon(3, rng.randint(0, 7), rng)
        cert = is_melonic(g)
        assert cert is not None
        assert len(cert.contraction_sequence) == g.half_order - 1
        assert replay_certificate(g, cert)


def test_tampered_certificate_fails():
    g = insert_dipole(dipole(4), (0, 0))
    cert = is_melonic(g)
    w, b, col = cert.contraction_sequence[0]
    forged = type(cert)(((w, b, (col + 1) % 4),))
    assert not replay_certificate(g, forged)


def test_single_insertion_unique():
    melons = {canonical_form(insert_dipole(dipole(4), (k, 0))) for k in range(4)}
    assert len(melons) == 4
    assert count_melonic(3, 1) == 4
    for k in range(4):
        g = insert_dipole(dipole(4), (k, 0))
        assert g.half_order == 2


def test_bad_line():
    with pytest.raises(BadLine):
        insert_dipole(dipole(4), (4, 0))
    with pytest.raises(BadLine):
        insert_dipole(dipole(4), (0, 1))


@pytest.mark.parametrize("D", [3, 4])
def test_insertion_keeps_degree_zero(D):
    rng = random.Random(D)
    g = dipole(D + 1)
    for _ in range(40):
        line = (rng.randrange(D + 1), rng.randrange(g.half_order))
        h = insert_dipole(g, line)
        assert h.half_order == g.half_order + 1
        assert degree(h).degree == 0
        assert is_melonic(h) is not None
        g = h if h.half_order < 9 else dipole(D + 1)


def test_counts():
    assert [count_melonic(3, p) for p in range(5)] == [1, 4, 10, 44, 197]
    assert [count_melonic(4, p) for p in range(4)] == [1, 5, 15, 85]
    assert count_melonic(7, 0) == 1


def test_count_limit():
    with pytest.raises(SizeLimitExceeded):
        count_melonic(3, 7)


@pytest.mark.parametrize("c,half_order", [(4, 1), (4, 2), (4, 3), (4, 4), (5, 2), (5, 3)])
def test_degree_zero_equals_melonic(c, half_order):
    zero = degree_zero_classes(c, half_order)
    assert zero == melon_classes(c - 1, half_order - 1)
    for cf in zero:
        assert is_melonic(cf.graph) is not None


def test_root_only_tree_is_dipole():
    assert tree_to_melon(ColoredTree.leaf(4), 3) == dipole(4)
    assert melon_to_tree(dipole(4)) == ColoredTree.leaf(4)


@pytest.mark.parametrize("k", range(4))
def test_one_insertion_is_one_child(k):
    t = parse_tree(f"({k + 1}:())", 4)
    g = insert_dipole(dipole(4), (k, 0))
    assert are_isomorphic(tree_to_melon(t, 3), g)
    assert melon_to_tree(g) == t


def test_tree_rank_must_match():
    with pytest.raises(ValueError):
        tree_to_melon(ColoredTree.leaf(3), 3)


def test_melon_to_tree_rejects_non_melon():
    g = next(g for g in labeled_configurations(4, 3) if is_connected(g) and degree(g).degree > 0)
    with pytest.raises(NotMelonic):
        melon_to_tree(g)


def test_tree_round_trip_random():
    rng = random.Random(17)
    for _ in range(500):
        t = random_tree(4, 8, rng)
        g = tree_to_melon(t, 3)
        assert g.half_order == t.size()
        assert is_melonic(g) is not None
        assert are_isomorphic(tree_to_melon(melon_to_tree(g), 3), g)
        # trees of isomorphic melons coincide under the canonical rooting
        assert melon_to_tree(g) == melon_to_tree(tree_to_melon(melon_to_tree(g), 3))


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 4), st.integers(0, 6), st.randoms(use_true_random=False))
def test_melon_round_trip(D, n, rnd):
    g = random_melon(D, n, rnd)
    t = melon_to_tree(g)
    assert t.size() == g.half_order
    assert are_isomorphic(tree_to_melon(t, D), g)


def test_contraction_order_does_not_matter():
    rng = random.Random(23)
    for _ in range(100):
        g = random_melon(3, rng.randint(1, 7), rng)
        ref = melon_to_tree(g)
        for _ in range(5):
            assert _tree_from_graph_any_order(g, rng) == ref


def test_iter_melons_keyed():
    pairs = list(iter_melons(3, 2))
    assert len(pairs) == 10
    for g, t in pairs:
        assert canonical_form(g).graph == g
        assert are_isomorphic(tree_to_melon(t, 3), g)
