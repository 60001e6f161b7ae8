"""Connected trace invariants (bubbles) and the couplings attached to them.

Bubbles use tensor colors ``1..D``; internally a bubble graph stores them as
matchings ``0..D-1`` and :attr:`Bubble.color_offset` records the shift.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Iterator

from .errors import ColorCountMismatch, Disconnected, SizeLimitExceeded
from .graph import CanonicalForm, ColoredGraph, build, canonical_form, dipole, is_connected
from .jackets import degree

#: Upper bound on labeled configurations ``(p!)^(c-1)`` scanned by the brute force.
ENUMERATION_MAX_CONFIGS = 600_000


@dataclass(frozen=True, order=True)
class Bubble:
    key: CanonicalForm
    color_offset: int = field(default=1, compare=False)

    @classmethod
    def from_graph(cls, g: ColoredGraph) -> "Bubble":
        if not is_connected(g):
            raise Disconnected("bubbles are connected invariants")
        return cls(canonical_form(g))

    @property
    def graph(self) -> ColoredGraph:
        return self.key.graph

    @property
    def rank(self) -> int:
        return self.graph.color_count

    @property
    def half_order(self) -> int:
        return self.graph.half_order

    def to_json(self) -> dict:
        return {**self.graph.to_json(), "color_offset": self.color_offset}


def quadratic_bubble(rank: int) -> Bubble:
    """The D-dipole, i.e. the Gaussian term of the action."""
    return Bubble.from_graph(dipole(rank))


def load_bubble(path: str | Path) -> Bubble:
    with open(path) as fh:
        data = json.load(fh)
    return Bubble.from_graph(build(data["colors"], data["p"], data["matchings"]))


def enumerate_connected(color_count: int, half_order: int) -> list[ColoredGraph]:
    """Isomorphism classes of connected graphs, as canonical representatives in key order.

    Color 0 is fixed to the identity matching; every graph is isomorphic to
    such a representative, so nothing is lost.
    """
    return [cf.graph for cf in sorted(_connected_forms(color_count, half_order))]


def labeled_configurations(color_count: int, half_order: int, gauge_color: int = 0) -> Iterator[ColoredGraph]:
    """All graphs with matching ``gauge_color`` equal to the identity."""
    c, p = color_count, half_order
    n_configs = factorial(p) ** (c - 1)
    if n_configs > ENUMERATION_MAX_CONFIGS:
        raise SizeLimitExceeded(f"(p!)^(c-1) = {n_configs} exceeds {ENUMERATION_MAX_CONFIGS}")
    identity = tuple(range(p))
    perms = list(itertools.permutations(range(p)))
    for rest in itertools.product(perms, repeat=c - 1):
        mats = list(rest)
        mats.insert(gauge_color, identity)
        yield ColoredGraph(c, p, tuple(mats))


def _connected_forms(color_count: int, half_order: int, gauge_color: int = 0) -> set[CanonicalForm]:
    forms = set()
    for g in labeled_configurations(color_count, half_order, gauge_color):
        if is_connected(g):
            forms.add(canonical_form(g))
    return forms


def enumerate_bubbles(rank: int, half_order: int) -> list[Bubble]:
    if rank < 2:
        raise ColorCountMismatch(f"bubbles need rank D >= 2, got {rank}")
    return [Bubble(cf) for cf in sorted(_connected_forms(rank, half_order))]


def bubble_degree(b: Bubble | ColoredGraph) -> int:
    """Degree of a bubble; a connected 2-colored graph is a single polygon, degree 0."""
    g = b.graph if isinstance(b, Bubble) else b
    if g.color_count == 2:
        return 0
    return degree(g).degree


def bubble_degree_scaling(b: Bubble) -> Fraction:
    """Exponent ``-2 omega(B) / (D-2)!`` multiplying ``Tr_B`` in the action.

    For ``D = 2`` this is read as ``-2 g / 0! = 0`` since every bubble is planar.
    """
    return Fraction(-2 * bubble_degree(b), factorial(b.rank - 2))


class CouplingMap:
    """Exact rational couplings ``t_B`` keyed by canonical bubble.

    The quadratic bubble is implicit (coefficient 1) and cannot be set.
    """

    def __init__(self, entries: dict[Bubble, Fraction] | None = None):
        self.entries: dict[Bubble, Fraction] = {}
        for b, t in (entries or {}).items():
            self[b] = t

    def __setitem__(self, b: Bubble, t) -> None:
        if b.half_order == 1:
            raise ValueError("the quadratic bubble is part of the Gaussian measure, not a coupling")
        if self.entries and next(iter(self.entries)).rank != b.rank:
            raise ColorCountMismatch("all couplings must share one rank")
        self.entries[b] = Fraction(t)

    def __getitem__(self, b: Bubble) -> Fraction:
        return self.entries[b]

    def __iter__(self):
        return iter(sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def rank(self) -> int | None:
        return next(iter(self.entries)).rank if self.entries else None
