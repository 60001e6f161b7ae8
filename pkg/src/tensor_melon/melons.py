"""Melonic graphs: recognition by dipole contraction, insertion, and the tree bijection.

Every white vertex of a melon has a partner black vertex; the pair is the
two-vertex ball added by one insertion (or the initial ``(D+1)``-dipole).
The tree of a melon has one vertex per pair.  Inserting a new pair on the
color-``k`` line leaving the white vertex of pair ``U`` makes the new pair
the color-``k`` child of ``U``, and ``U``'s previous color-``k`` child (if
any) moves down to become the new pair's color-``k`` child.

Graph color ``k`` (``0..D``) corresponds to tree color ``k + 1``, so melons
of ``D + 1`` colors map to trees of rank ``D + 1``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import BadLine, Disconnected, NotMelonic, SizeLimitExceeded, TooFewColors
from .graph import CanonicalForm, ColoredGraph, canonical_form, canonical_graph, dipole, is_connected
from .trees import ColoredTree, all_trees


@dataclass(frozen=True)
class MelonCertificate:
    """Dipoles removed in order, as ``(white, black, color of the kept line)`` in original labels."""
    contraction_sequence: tuple[tuple[int, int, int], ...]
    trivial: bool = True


class _Live:
    """Mutable view of a graph under dipole contraction, keeping original vertex labels."""

    def __init__(self, g: ColoredGraph):
        self.c = g.color_count
        self.fwd = [dict(enumerate(m)) for m in g.matchings]
        self.back = [{b: w for w, b in m.items()} for m in self.fwd]

    @property
    def whites(self) -> list[int]:
        return sorted(self.fwd[0])

    def dipole_color(self, w: int) -> int | None:
        """If ``w`` and its black neighbors form a ``(c-1)``-dipole, the one color not shared."""
        targets: dict[int, list[int]] = {}
        for i in range(self.c):
            targets.setdefault(self.fwd[i][w], []).append(i)
        for b, colors in targets.items():
            if len(colors) == self.c - 1:
                (missing,) = set(range(self.c)) - set(colors)
                return missing
        return None

    def partner(self, w: int, color: int) -> int:
        other = (color + 1) % self.c
        return self.fwd[other][w]

    def contract(self, w: int, color: int) -> tuple[int, int, int, int]:
        b = self.partner(w, color)
        w_out = self.back[color][b]
        b_out = self.fwd[color][w]
        del self.back[color][b]
        for i in range(self.c):
            del self.back[i][self.fwd[i][w]]
            del self.fwd[i][w]
        self.fwd[color][w_out] = b_out
        self.back[color][b_out] = w_out
        return b, w_out, b_out, color


def _contract_all(g: ColoredGraph, keep_white: int | None = None, rng: random.Random | None = None):
    """Greedy dipole contraction; returns (steps, final live graph)."""
    live = _Live(g)
    steps = []
    while len(live.fwd[0]) > 1:
        candidates = [(w, col) for w in live.whites if w != keep_white
                      for col in [live.dipole_color(w)] if col is not None]
        if not candidates:
            return steps, live
        w, col = rng.choice(candidates) if rng else candidates[0]
        b, w_out, b_out, _ = live.contract(w, col)
        steps.append((w, b, col, w_out, b_out))
    return steps, live


def _check_melonic_input(g: ColoredGraph) -> None:
    if g.color_count < 4:
        raise TooFewColors("melonic recognition by dipoles needs D >= 3 (at least 4 colors); "
                           "for 3 colors use degree 0")
    if not is_connected(g):
        raise Disconnected("melonic recognition needs a connected graph")


def is_melonic(g: ColoredGraph) -> MelonCertificate | None:
    _check_melonic_input(g)
    steps, live = _contract_all(g)
    if len(live.fwd[0]) != 1:
        return None
    return MelonCertificate(tuple((w, b, col) for w, b, col, _, _ in steps))


def replay_certificate(g: ColoredGraph, cert: MelonCertificate) -> bool:
    """True iff each recorded removal is a genuine dipole and the dipole graph remains."""
    live = _Live(g)
    for w, b, col in cert.contraction_sequence:
        if w not in live.fwd[0] or live.dipole_color(w) != col or live.partner(w, col) != b:
            return False
        live.contract(w, col)
    return len(live.fwd[0]) == 1


def insert_dipole(g: ColoredGraph, line: tuple[int, int]) -> ColoredGraph:
    """Insert two vertices joined by ``c - 1`` lines on the line ``(color, white)``.

    The new white and black vertices get index ``p``.
    """
    color, w = line
    p, c = g.half_order, g.color_count
    if not (0 <= color < c and 0 <= w < p):
        raise BadLine(f"no line of color {color} at white {w}")
    b = g.matchings[color][w]
    mats = []
    for i, m in enumerate(g.matchings):
        row = list(m) + [p]
        if i == color:
            row[w] = p
            row[p] = b
        mats.append(tuple(row))
    return ColoredGraph(c, p + 1, tuple(mats))


def tree_to_melon(t: ColoredTree, D: int) -> ColoredGraph:
    """Realize a rank ``D + 1`` tree as a melon with ``2 * size`` vertices.

    The root is the pair ``(0, 0)``; other pairs are numbered in preorder.
    """
    c = D + 1
    if t.rank != c:
        raise ValueError(f"melons of {c} colors need rank {c} trees, got rank {t.rank}")
    mats = [dict() for _ in range(c)]
    counter = itertools.count()

    def new_pair() -> int:
        return next(counter)

    def chain(node: ColoredTree, k: int, w_left: int, b_right: int) -> None:
        # node sits on the color-k path from white w_left to black b_right
        me = new_pair()
        mats[k][w_left] = me
        for j in range(c):
            if j == k:
                continue
            sub = node[j]
            if sub is None:
                mats[j][me] = me
            else:
                chain(sub, j, me, me)
        nxt = node[k]
        if nxt is None:
            mats[k][me] = b_right
        else:
            chain(nxt, k, me, b_right)

    root = new_pair()
    for k in range(c):
        if t[k] is None:
            mats[k][root] = root
        else:
            chain(t[k], k, root, root)
    p = next(counter)
    return ColoredGraph(c, p, tuple(tuple(m[w] for w in range(p)) for m in mats))


def _tree_from_steps(steps, root_white: int, c: int) -> ColoredTree:
    """Rebuild the pair tree by replaying contractions backwards as insertions."""
    children: dict[int, dict[int, int]] = {root_white: {}}
    for w, _b, col, w_out, _b_out in reversed(steps):
        # pair (w, b) was inserted on the color-col line leaving white w_out
        children[w] = {}
        old = children[w_out].get(col)
        children[w_out][col] = w
        if old is not None:
            children[w][col] = old

    def build(u: int) -> ColoredTree:
        slots = [None] * c
        for col, v in children[u].items():
            slots[col] = build(v)
        return ColoredTree(slots)

    return build(root_white)


def melon_to_tree(g: ColoredGraph) -> ColoredTree:
    """Tree of a melon, rooted at the pair of white vertex 0 of the canonical form.

    Isomorphic melons give identical trees.
    """
    _check_melonic_input(g)
    h = canonical_graph(g)
    steps, live = _contract_all(h, keep_white=0)
    if len(live.fwd[0]) != 1:
        raise NotMelonic("graph has no melon certificate")
    return _tree_from_steps(steps, 0, g.color_count)


def _tree_from_graph_any_order(g: ColoredGraph, rng: random.Random) -> ColoredTree:
    """Same as :func:`melon_to_tree` but with a random admissible contraction order."""
    h = canonical_graph(g)
    steps, live = _contract_all(h, keep_white=0, rng=rng)
    if len(live.fwd[0]) != 1:
        raise NotMelonic("graph has no melon certificate")
    return _tree_from_steps(steps, 0, g.color_count)


def melon_classes(D: int, p: int) -> set[CanonicalForm]:
    """Canonical forms of melons with ``p`` insertions (``2p + 2`` vertices), via trees."""
    if p < 0:
        raise ValueError("p must be non-negative")
    if p + 1 > 7:
        raise SizeLimitExceeded("melon classes are computed for at most 6 insertions")
    return {canonical_form(tree_to_melon(t, D)) for t in all_trees(D + 1, p + 1) if t.size() == p + 1}


def count_melonic(D: int, p: int) -> int:
    return len(melon_classes(D, p))


def iter_melons(D: int, p: int) -> Iterator[tuple[ColoredGraph, ColoredTree]]:
    """Canonical melons with ``p`` insertions and their trees, in key order."""
    for cf in sorted(melon_classes(D, p)):
        g = cf.graph
        yield g, melon_to_tree(g)


def random_melon(D: int, insertions: int, rng: random.Random) -> ColoredGraph:
    g = dipole(D + 1)
    for _ in range(insertions):
        g = insert_dipole(g, (rng.randrange(D + 1), rng.randrange(g.half_order)))
    return g
