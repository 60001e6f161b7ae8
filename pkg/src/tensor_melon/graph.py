"""Closed bipartite edge-colored graphs.

A graph with ``c`` colors and half order ``p`` has white vertices ``0..p-1``
and black vertices ``0..p-1``.  Color ``i`` is a perfect matching stored as a
tuple ``matchings[i]`` with ``matchings[i][w]`` the black vertex joined to
white ``w`` by the line of color ``i``.  The same type carries trace
invariants (bubbles), Feynman graphs and everything derived from them.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BadColor, ColorCountMismatch, NotABijection, SizeLimitExceeded

#: Largest half order for the exhaustive searches: :func:`automorphism_count`
#: (``p!`` relabelings, 40320 at the bound) and :func:`canonical_form` of a
#: disconnected graph.
CANONICAL_MAX_P = 8


@dataclass(frozen=True)
class ColoredGraph:
    color_count: int
    half_order: int
    matchings: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        c, p = self.color_count, self.half_order
        if c < 1 or p < 1:
            raise ColorCountMismatch(f"need color_count >= 1 and half_order >= 1, got c={c}, p={p}")
        if len(self.matchings) != c:
            raise ColorCountMismatch(f"expected {c} matchings, got {len(self.matchings)}")
        full = set(range(p))
        for i, m in enumerate(self.matchings):
            if len(m) != p:
                raise NotABijection(f"matching of color {i} has length {len(m)}, expected {p}")
            if set(m) != full:
                raise NotABijection(f"matching of color {i} is not a bijection on 0..{p - 1}: {list(m)}")

    @cached_property
    def inverses(self) -> tuple[tuple[int, ...], ...]:
        """``inverses[i][b]`` is the white vertex joined to black ``b`` by color ``i``."""
        out = []
        for m in self.matchings:
            inv = [0] * self.half_order
            for w, b in enumerate(m):
                inv[b] = w
            out.append(tuple(inv))
        return tuple(out)

    def to_json(self) -> dict:
        return {"colors": self.color_count, "p": self.half_order,
                "matchings": [list(m) for m in self.matchings]}

    def relabel(self, white: Sequence[int], black: Sequence[int]) -> "ColoredGraph":
        """Send white ``w`` to ``white[w]`` and black ``b`` to ``black[b]``."""
        p = self.half_order
        new = []
        for m in self.matchings:
            row = [0] * p
            for w in range(p):
                row[white[w]] = black[m[w]]
            new.append(tuple(row))
        return ColoredGraph(self.color_count, p, tuple(new))


@dataclass(frozen=True)
class Face:
    colors: tuple[int, int]
    length: int
    vertex_cycle: tuple[tuple[str, int], ...]


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: tuple

    @property
    def graph(self) -> ColoredGraph:
        c, p, matchings = self.key
        return ColoredGraph(c, p, matchings)


def build(color_count: int, half_order: int, matchings: Iterable[Iterable[int]]) -> ColoredGraph:
    return ColoredGraph(color_count, half_order, tuple(tuple(int(b) for b in m) for m in matchings))


def dipole(color_count: int) -> ColoredGraph:
    """Two vertices joined by ``color_count`` lines."""
    return build(color_count, 1, [[0]] * color_count)


def load_graph(path: str | Path) -> ColoredGraph:
    with open(path) as fh:
        return graph_from_json(json.load(fh))


def graph_from_json(data: dict) -> ColoredGraph:
    return build(data["colors"], data["p"], data["matchings"])


def _check_color(g: ColoredGraph, i: int) -> None:
    if not 0 <= i < g.color_count:
        raise BadColor(f"color {i} not in 0..{g.color_count - 1}")


def face_permutation(g: ColoredGraph, i: int, j: int) -> list[int]:
    """White-to-white map ``(matching_j)^-1 o matching_i``."""
    mi, inv_j = g.matchings[i], g.inverses[j]
    return [inv_j[mi[w]] for w in range(g.half_order)]


def cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    n = 0
    for start in range(len(perm)):
        if not seen[start]:
            n += 1
            x = start
            while not seen[x]:
                seen[x] = True
                x = perm[x]
    return n


def faces(g: ColoredGraph, i: int, j: int) -> list[Face]:
    _check_color(g, i)
    _check_color(g, j)
    if i == j:
        raise BadColor("a face needs two distinct colors")
    mi, inv_j = g.matchings[i], g.inverses[j]
    seen = [False] * g.half_order
    out = []
    for start in range(g.half_order):
        if seen[start]:
            continue
        cycle = []
        w = start
        while not seen[w]:
            seen[w] = True
            b = mi[w]
            cycle += [("w", w), ("b", b)]
            w = inv_j[b]
        out.append(Face((min(i, j), max(i, j)), len(cycle) // 2, tuple(cycle)))
    return out


def pair_face_counts(g: ColoredGraph) -> dict[tuple[int, int], int]:
    """Number of bicolored cycles for each color pair ``i < j``."""
    return {(i, j): cycle_count(face_permutation(g, i, j))
            for i, j in itertools.combinations(range(g.color_count), 2)}


def face_count(g: ColoredGraph) -> int:
    return sum(pair_face_counts(g).values())


def _components(g: ColoredGraph) -> list[tuple[list[int], list[int]]]:
    p = g.half_order
    white_seen = [False] * p
    out = []
    for start in range(p):
        if white_seen[start]:
            continue
        whites, blacks = {start}, set()
        white_seen[start] = True
        stack = [start]
        while stack:
            w = stack.pop()
            for m in g.matchings:
                b = m[w]
                if b not in blacks:
                    blacks.add(b)
                    for other in g.inverses:
                        w2 = other[b]
                        if not white_seen[w2]:
                            white_seen[w2] = True
                            whites.add(w2)
                            stack.append(w2)
        out.append((sorted(whites), sorted(blacks)))
    return out


def is_connected(g: ColoredGraph) -> bool:
    return len(_components(g)) == 1


def connected_components(g: ColoredGraph) -> list[ColoredGraph]:
    """Components as standalone graphs, whites and blacks relabeled densely in increasing order."""
    out = []
    for whites, blacks in _components(g):
        bpos = {b: k for k, b in enumerate(blacks)}
        mats = [tuple(bpos[m[w]] for w in whites) for m in g.matchings]
        out.append(ColoredGraph(g.color_count, len(whites), tuple(mats)))
    return out


def disjoint_union(graphs: Sequence[ColoredGraph]) -> ColoredGraph:
    if not graphs:
        raise ColorCountMismatch("empty union")
    c = graphs[0].color_count
    if any(h.color_count != c for h in graphs):
        raise ColorCountMismatch("all parts need the same number of colors")
    mats: list[list[int]] = [[] for _ in range(c)]
    offset = 0
    for h in graphs:
        for i in range(c):
            mats[i].extend(b + offset for b in h.matchings[i])
        offset += h.half_order
    return build(c, offset, mats)


def _inverse(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for x, y in enumerate(perm):
        inv[y] = x
    return inv


def _reduced(g: ColoredGraph) -> list[list[int]]:
    """``matching_0^-1 o matching_i`` for i >= 1 (white-to-white)."""
    inv0 = g.inverses[0]
    return [[inv0[m[w]] for w in range(g.half_order)] for m in g.matchings[1:]]


def _min_sequence(mus: Sequence[Sequence[int]], p: int) -> tuple[int, ...]:
    """Least column-major sequence ``(s mu_1 s^-1 (w), ..., s mu_k s^-1 (w))_w`` over relabelings ``s``.

    Labels are handed out in increasing order.  When the vertex read next
    already has a label, the image it points to must receive the smallest
    free label in any minimal sequence, so only the choice of a vertex for a
    label nobody points to yet branches.  For connected graphs that happens
    once, at label 0.
    """
    best: list[int] | None = None
    rows = len(mus)

    def walk(k: int, label: dict[int, int], vertex: list[int], seq: list[int], less: bool) -> None:
        nonlocal best
        while k < p:
            if k == len(vertex):
                for x in range(p):
                    if x not in label:
                        # an earlier sibling may have lowered best to our own prefix
                        less = best is None or seq < best[:len(seq)]
                        lab = dict(label)
                        lab[x] = k
                        walk(k, lab, vertex + [x], list(seq), less)
                return
            x = vertex[k]
            for r in range(rows):
                y = mus[r][x]
                if y not in label:
                    label[y] = len(vertex)
                    vertex.append(y)
                value = label[y]
                if not less and best is not None:
                    ref = best[len(seq)]
                    if value > ref:
                        return
                    less = value < ref
                seq.append(value)
            k += 1
        if best is None or less:
            best = seq

    walk(0, {}, [], [], False)
    return tuple(best or ())


def canonical_form(g: ColoredGraph) -> CanonicalForm:
    """Least encoding of ``g`` over all white/black relabelings.

    The encoding is color 0's matching followed by, white by white, the
    remaining matchings.  Its least value has color 0 equal to the identity,
    which fixes the black relabeling once the white one is chosen; the white
    relabeling is then found by :func:`_min_sequence`.  Disconnected graphs
    may branch heavily and are limited to ``CANONICAL_MAX_P``.
    """
    p, c = g.half_order, g.color_count
    if p > CANONICAL_MAX_P and not is_connected(g):
        raise SizeLimitExceeded(f"canonical_form of disconnected graphs supports half_order <= {CANONICAL_MAX_P}, got {p}")
    seq = _min_sequence(_reduced(g), p)
    rest = tuple(tuple(seq[w * (c - 1) + r] for w in range(p)) for r in range(c - 1))
    return CanonicalForm((c, p, (tuple(range(p)),) + rest))


def canonical_graph(g: ColoredGraph) -> ColoredGraph:
    return canonical_form(g).graph


def are_isomorphic(g1: ColoredGraph, g2: ColoredGraph) -> bool:
    if (g1.color_count, g1.half_order) != (g2.color_count, g2.half_order):
        return False
    return canonical_form(g1) == canonical_form(g2)


def automorphism_count(g: ColoredGraph) -> int:
    """Number of (white, black) relabeling pairs fixing every matching."""
    p = g.half_order
    if p > CANONICAL_MAX_P:
        raise SizeLimitExceeded(f"automorphism_count supports half_order <= {CANONICAL_MAX_P}")
    reduced = [tuple(mu) for mu in _reduced(g)]
    n = 0
    for sigma in itertools.permutations(range(p)):
        sigma_inv = _inverse(sigma)
        if all(tuple(sigma[mu[sigma_inv[x]]] for x in range(p)) == mu for mu in reduced):
            n += 1
    return n
