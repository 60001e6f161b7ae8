"""Feynman graphs from Wick pairings and the perturbative free energy.

A term glues an ordered list of bubbles with a color-0 pairing of all their
white vertices to all their black vertices.  Bubble colors ``1..D`` become
colors ``1..D`` of the assembled ``(D+1)``-colored graph.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .bubbles import Bubble, CouplingMap, bubble_degree_scaling
from .errors import ColorCountMismatch, Disconnected, SizeLimitExceeded
from .graph import ColoredGraph, connected_components, face_permutation, cycle_count
from .jackets import degree

#: Pairings are enumerated exhaustively, so the total white count is capped.
MAX_WICK_VERTICES = 8


@dataclass(frozen=True)
class FeynmanTerm:
    bubbles: tuple[Bubble, ...]
    pairing: tuple[int, ...]
    assembled: ColoredGraph
    connected: bool
    # Sum over components of D - 2 omega / (D-1)!; equals the theorem value when connected.
    amplitude_exponent: Fraction
    weight: Fraction

    @property
    def rank(self) -> int:
        return self.assembled.color_count - 1


@dataclass(frozen=True)
class SeriesTerm:
    order: tuple          # sorted canonical keys of the bubbles, with repetition
    coefficient: Fraction
    n_exponent: Fraction


def assemble(bubbles: Sequence[Bubble], pairing: Sequence[int]) -> ColoredGraph:
    """Glue bubbles along a color-0 pairing: ``pairing[w]`` is the black vertex paired with white ``w``."""
    mats: list[list[int]] = [list(pairing)] + [[] for _ in range(bubbles[0].rank)]
    offset = 0
    for b in bubbles:
        for i, m in enumerate(b.graph.matchings):
            mats[i + 1].extend(x + offset for x in m)
        offset += b.half_order
    return ColoredGraph(len(mats), offset, tuple(tuple(m) for m in mats))


def multiset_weight(bubbles: Sequence[Bubble]) -> Fraction:
    """``(-1)^n / prod(multiplicity!)`` from expanding the exponential of the interaction."""
    denom = 1
    for mult in Counter(bubbles).values():
        denom *= factorial(mult)
    return Fraction((-1) ** len(bubbles), denom)


def wick_pairings(bubbles: Sequence[Bubble]) -> list[FeynmanTerm]:
    if not bubbles:
        return []
    rank = bubbles[0].rank
    if any(b.rank != rank for b in bubbles):
        raise ColorCountMismatch("bubbles of different rank")
    q = sum(b.half_order for b in bubbles)
    if q > MAX_WICK_VERTICES:
        raise SizeLimitExceeded(f"{q} white vertices exceed the Wick bound {MAX_WICK_VERTICES}")
    bubbles = tuple(bubbles)
    weight = multiset_weight(bubbles)
    out = []
    for pairing in itertools.permutations(range(q)):
        g = assemble(bubbles, pairing)
        comps = connected_components(g)
        exponent = sum((degree(h).amplitude_exponent for h in comps), Fraction(0))
        out.append(FeynmanTerm(bubbles, pairing, g, len(comps) == 1, exponent, weight))
    return out


def amplitude(term: FeynmanTerm) -> Fraction:
    """Power of N of a connected term, from the degree of the assembled graph."""
    if not term.connected:
        raise Disconnected("decompose the term into components first")
    return degree(term.assembled).amplitude_exponent


def raw_exponent(term: FeynmanTerm) -> Fraction:
    """Power of N from counting index sums directly.

    Each bubble contributes ``D - 1 + scaling``, each color-0 line ``-(D-1)``,
    and each face of colors ``0i`` one free sum.
    """
    D = term.rank
    g = term.assembled
    per_bubble = sum((D - 1 + bubble_degree_scaling(b) for b in term.bubbles), Fraction(0))
    zero_faces = sum(cycle_count(face_permutation(g, 0, i)) for i in range(1, D + 1))
    return per_bubble + zero_faces - (D - 1) * g.half_order


def _multisets(couplings: CouplingMap, max_total_bubbles: int):
    keys = list(couplings)
    for n in range(1, max_total_bubbles + 1):
        yield from itertools.combinations_with_replacement(keys, n)


def free_energy_series(couplings: CouplingMap, max_total_bubbles: int) -> list[SeriesTerm]:
    """Connected vacuum terms up to ``max_total_bubbles`` effective vertices.

    Each connected labeled term contributes ``(-1)^n prod(t_B) / prod(mult!)``
    times ``N^exponent``; terms with equal bubble content and exponent merge.
    Sorted by bubble content, then by increasing exponent.
    """
    acc: dict[tuple, Fraction] = {}
    for combo in _multisets(couplings, max_total_bubbles):
        t_product = Fraction(1)
        for b in combo:
            t_product *= couplings[b]
        order = tuple(b.key for b in combo)
        for term in wick_pairings(combo):
            if not term.connected:
                continue
            k = (order, term.amplitude_exponent)
            acc[k] = acc.get(k, Fraction(0)) + term.weight * t_product
    terms = [SeriesTerm(order, coef, exp) for (order, exp), coef in acc.items() if coef != 0]
    terms.sort(key=lambda s: (len(s.order), s.order, s.n_exponent))
    return terms


def evaluate_power(n: int, exponent: Fraction) -> Fraction:
    if exponent.denominator != 1:
        raise ValueError(f"N^{exponent} is not rational for integer N")
    return Fraction(n) ** int(exponent)


def moment_prediction(bubbles: Sequence[Bubble], n: int) -> Fraction:
    """Gaussian expectation of ``prod Tr_B`` predicted from the expansion, at concrete N.

    Sums ``N^exponent`` over all pairings (disconnected ones as products over
    components) and strips the per-bubble factors ``N^(D-1+scaling)`` that the
    action attaches to each effective vertex.
    """
    if not bubbles:
        return Fraction(1)
    D = bubbles[0].rank
    strip = sum((D - 1 + bubble_degree_scaling(b) for b in bubbles), Fraction(0))
    total = Fraction(0)
    for term in wick_pairings(bubbles):
        total += evaluate_power(n, term.amplitude_exponent - strip)
    return total


def series_value(series: Sequence[SeriesTerm], n: int) -> Fraction:
    return sum((s.coefficient * evaluate_power(n, s.n_exponent) for s in series), Fraction(0))
