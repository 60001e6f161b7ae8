"""Colored rooted D-ary trees, the join operation and the bracket on formal tree sums.

A tree is stored as a tuple of ``rank`` slots; slot ``i`` holds the child
reached by the line of color ``i + 1`` or ``None``.  A vertex is named by its
path from the root, a tuple of colors in ``1..rank``; the root is ``()``.
"""
from __future__ import annotations

import itertools
import random
from collections import Counter
from typing import Iterator

from .errors import RankMismatch, VertexNotFound

Path = tuple[int, ...]


class ColoredTree(tuple):
    __slots__ = ()

    @classmethod
    def leaf(cls, rank: int) -> "ColoredTree":
        return cls((None,) * rank)

    @property
    def rank(self) -> int:
        return len(self)

    def child(self, color: int) -> "ColoredTree | None":
        return self[color - 1]

    def children(self) -> Iterator[tuple[int, "ColoredTree"]]:
        for i, sub in enumerate(self):
            if sub is not None:
                yield i + 1, sub

    def size(self) -> int:
        return 1 + sum(sub.size() for _, sub in self.children())

    def vertices(self) -> list[Path]:
        """All vertex paths in preorder, children visited by increasing color."""
        out = [()]
        for color, sub in self.children():
            out.extend((color,) + q for q in sub.vertices())
        return out

    def subtree(self, path: Path) -> "ColoredTree":
        node = self
        for color in path:
            node = node[color - 1] if 1 <= color <= len(node) else None
            if node is None:
                raise VertexNotFound(f"no vertex at path {path}")
        return node

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        return f"ColoredTree({serialize(self)!r}, rank={self.rank})"


def serialize(t: ColoredTree) -> str:
    return "(" + ", ".join(f"{c}:{serialize(s)}" for c, s in t.children()) + ")"


def canonical_tree(t: ColoredTree) -> str:
    """Colors are not permutable and siblings carry distinct colors, so the serialization is canonical."""
    return serialize(t)


def parse_tree(text: str, rank: int) -> ColoredTree:
    s = "".join(text.split())
    pos = 0

    def node() -> ColoredTree:
        nonlocal pos
        if s[pos] != "(":
            raise ValueError(f"expected '(' at {pos} in {text!r}")
        pos += 1
        slots: list = [None] * rank
        while s[pos] != ")":
            colon = s.index(":", pos)
            color = int(s[pos:colon])
            if not 1 <= color <= rank:
                raise ValueError(f"color {color} outside 1..{rank}")
            if slots[color - 1] is not None:
                raise ValueError(f"color {color} repeated among siblings")
            pos = colon + 1
            slots[color - 1] = node()
            if s[pos] == ",":
                pos += 1
        pos += 1
        return ColoredTree(slots)

    try:
        t = node()
    except IndexError:
        raise ValueError(f"truncated tree text {text!r}") from None
    if pos != len(s):
        raise ValueError(f"trailing characters in {text!r}")
    return t


def _attach_at_end(node: ColoredTree | None, slot: int, branch: ColoredTree) -> ColoredTree:
    if node is None:
        return branch
    slots = list(node)
    slots[slot] = _attach_at_end(node[slot], slot, branch)
    return ColoredTree(slots)


def _chain_length(t: ColoredTree, slot: int) -> int:
    n = 0
    while t[slot] is not None:
        t = t[slot]
        n += 1
    return n


def join(t1: ColoredTree, v: Path, t2: ColoredTree) -> ColoredTree:
    """Graft ``t2`` with its root on vertex ``v`` of ``t1``.

    The branches hanging below ``v`` are cut first; the color-``i`` branch
    is then hung below the last vertex of the maximal color-``i`` path that
    starts at ``v`` in the grafted ``t2``.
    """
    if t1.rank != t2.rank:
        raise RankMismatch(f"rank {t1.rank} vs {t2.rank}")
    t1.subtree(v)
    return _join(t1, v, t2)


def _join(t1: ColoredTree, v: Path, t2: ColoredTree) -> ColoredTree:
    if v:
        slot = v[0] - 1
        slots = list(t1)
        slots[slot] = _join(t1[slot], v[1:], t2)
        return ColoredTree(slots)
    slots = list(t2)
    for i, branch in enumerate(t1):
        if branch is not None:
            slots[i] = _attach_at_end(slots[i], i, branch)
    return ColoredTree(slots)


def join_maps(t1: ColoredTree, v: Path, t2: ColoredTree) -> tuple[ColoredTree, dict[Path, Path], dict[Path, Path]]:
    """:func:`join` together with where each vertex of ``t1`` and ``t2`` ends up."""
    result = join(t1, v, t2)
    k = len(v)
    map2 = {u: v + u for u in t2.vertices()}
    map1 = {}
    for x in t1.vertices():
        if len(x) > k and x[:k] == v:
            color = x[k]
            chain = (color,) * _chain_length(t2, color - 1)
            map1[x] = v + chain + x[k:]
        else:
            map1[x] = x
    return result, map1, map2


class TreeSum:
    """Finite integer combination of trees of one rank; zero coefficients are dropped."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: dict | None = None):
        self.rank = rank
        self.terms: dict[ColoredTree, int] = {}
        for t, c in (terms or {}).items():
            self.add(t, c)

    @classmethod
    def basis(cls, t: ColoredTree) -> "TreeSum":
        return cls(t.rank, {t: 1})

    def add(self, t: ColoredTree, coef: int = 1) -> None:
        if t.rank != self.rank:
            raise RankMismatch(f"rank {t.rank} term in rank {self.rank} sum")
        c = self.terms.get(t, 0) + coef
        if c:
            self.terms[t] = c
        else:
            self.terms.pop(t, None)

    def __add__(self, other: "TreeSum") -> "TreeSum":
        out = TreeSum(self.rank, self.terms)
        for t, c in other.terms.items():
            out.add(t, c)
        return out

    def __neg__(self) -> "TreeSum":
        return TreeSum(self.rank, {t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "TreeSum") -> "TreeSum":
        return self + (-other)

    def __rmul__(self, k: int) -> "TreeSum":
        return TreeSum(self.rank, {t: k * c for t, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, TreeSum) and self.rank == other.rank and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self) -> list[tuple[ColoredTree, int]]:
        return sorted(self.terms.items(), key=lambda tc: (tc[0].size(), serialize(tc[0])))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*L{serialize(t)}" for t, c in self.items())


def graft_sum(a: ColoredTree, b: ColoredTree, out: TreeSum, sign: int = 1) -> None:
    """Accumulate ``sign * sum_{V in a} L_{a *_V b}`` into ``out``."""
    for v in a.vertices():
        out.add(_join(a, v, b), sign)


def bracket_trees(a: ColoredTree, b: ColoredTree) -> TreeSum:
    """``[L_a, L_b] = sum_{V in a} L_{a *_V b} - sum_{V in b} L_{b *_V a}``."""
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")
    out = TreeSum(a.rank)
    graft_sum(a, b, out, 1)
    graft_sum(b, a, out, -1)
    return out


def bracket(a: TreeSum | ColoredTree, b: TreeSum | ColoredTree) -> TreeSum:
    a = a if isinstance(a, TreeSum) else TreeSum.basis(a)
    b = b if isinstance(b, TreeSum) else TreeSum.basis(b)
    if a.rank != b.rank:
        raise RankMismatch(f"rank {a.rank} vs {b.rank}")
    out = TreeSum(a.rank)
    for ta, ca in a.terms.items():
        for tb, cb in b.terms.items():
            coef = ca * cb
            graft_sum(ta, tb, out, coef)
            graft_sum(tb, ta, out, -coef)
    return out


def jacobi_defect(t1: ColoredTree, t2: ColoredTree, t3: ColoredTree) -> TreeSum:
    """``[L1,[L2,L3]] + [L2,[L3,L1]] + [L3,[L1,L2]]``; empty when the Jacobi identity holds."""
    return (bracket(t1, bracket_trees(t2, t3))
            + bracket(t2, bracket_trees(t3, t1))
            + bracket(t3, bracket_trees(t1, t2)))


# The three cancellation identities used to prove the Jacobi identity.  Each
# returns (positive terms, negative terms) as multisets of trees; the identity
# states that the two multisets coincide term by term.

def cancellation_disjoint_vertices(t1, t2, t3) -> tuple[Counter, Counter]:
    """Joins at two distinct vertices of ``t2`` commute."""
    plus, minus = Counter(), Counter()
    verts2 = t2.vertices()
    for v in verts2:
        s13, m_a, _ = join_maps(t2, v, t1)
        s23, m_b, _ = join_maps(t2, v, t3)
        for w in verts2:
            if w == v:
                continue
            plus[join(s13, m_a[w], t3)] += 1
            minus[join(s23, m_b[w], t1)] += 1
    return plus, minus


def cancellation_nested(t1, t2, t3) -> tuple[Counter, Counter]:
    """``t1 *_V' (t2 *_V t3)`` equals ``(t1 *_V' t2) *_V t3`` with ``V`` read inside the join."""
    plus, minus = Counter(), Counter()
    for v in t2.vertices():
        s = join(t2, v, t3)
        for w in t1.vertices():
            plus[join(t1, w, s)] += 1
    for v in t1.vertices():
        s, _, m2 = join_maps(t1, v, t2)
        for w in t2.vertices():
            # w == () is the root of t2, which lands on v itself
            minus[join(s, m2[w], t3)] += 1
    return plus, minus


def all_trees(rank: int, max_vertices: int) -> list[ColoredTree]:
    """Every tree with at most ``max_vertices`` vertices, ordered by size then text."""
    level = {ColoredTree.leaf(rank)}
    out = list(level)
    for _ in range(max_vertices - 1):
        nxt = set()
        for t in level:
            for v in t.vertices():
                node = t.subtree(v)
                for i in range(rank):
                    if node[i] is None:
                        nxt.add(_graft_leaf(t, v, i))
        level = nxt
        out.extend(nxt)
    return sorted(out, key=lambda t: (t.size(), serialize(t)))


def _graft_leaf(t: ColoredTree, v: Path, slot: int) -> ColoredTree:
    if v:
        slots = list(t)
        slots[v[0] - 1] = _graft_leaf(t[v[0] - 1], v[1:], slot)
        return ColoredTree(slots)
    slots = list(t)
    slots[slot] = ColoredTree.leaf(len(t))
    return ColoredTree(slots)


def random_tree(rank: int, max_vertices: int, rng: random.Random) -> ColoredTree:
    """Grow a tree of uniformly chosen size by adding leaves at uniformly chosen free slots."""
    n = rng.randint(1, max_vertices)
    t = ColoredTree.leaf(rank)
    for _ in range(n - 1):
        free = [(v, i) for v in t.vertices() for i in range(rank) if t.subtree(v)[i] is None]
        v, i = rng.choice(free)
        t = _graft_leaf(t, v, i)
    return t


def non_associativity_witness(rank: int, max_vertices: int = 3) -> dict | None:
    """Search small trees for ``(t1 *_v t2) *_w t3 != t1 *_v (t2 *_w t3)`` with ``w`` in ``t1 - v``.

    ``w`` is not a vertex of ``t2``, so the right side is only meaningful when
    read through ``w``'s path; the first case where that reading exists and
    disagrees with the left side is returned.
    """
    trees = all_trees(rank, max_vertices)
    for t1, t2, t3 in itertools.product(trees, repeat=3):
        verts1 = t1.vertices()
        verts2 = set(t2.vertices())
        for v in verts1:
            left_base, m1, _ = join_maps(t1, v, t2)
            for w in verts1:
                if w == v:
                    continue
                left = join(left_base, m1[w], t3)
                if w not in verts2:
                    continue
                right = join(t1, v, join(t2, w, t3))
                if right != left:
                    return {"t1": serialize(t1), "v": list(v), "t2": serialize(t2), "w": list(w),
                            "t3": serialize(t3), "left": serialize(left), "right_by_path": serialize(right)}
    return None

