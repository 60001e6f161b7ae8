"""Brute-force checks: literal index sums and Gaussian moments at concrete N.

Nothing here uses face counting or the degree of a Feynman graph; the point
is to confirm those computations from the definitions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bubbles import Bubble, bubble_degree_scaling
from .errors import Disconnected, SizeLimitExceeded
from .graph import ColoredGraph, build, connected_components, is_connected
from .jackets import degree

#: Cap on assignments visited per color, ``N ** p``.
MAX_INDEX_ASSIGNMENTS = 1_000_000
MAX_ORACLE_VERTICES = 8


@dataclass(frozen=True)
class MomentSpec:
    bubbles: tuple[Bubble, ...]
    rank: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if any(b.rank != self.rank for b in self.bubbles):
            raise ValueError("bubble rank differs from MomentSpec.rank")


def delta_network_value(g: ColoredGraph, N: int) -> int:
    """Sum over all indices in ``1..N`` of the product of Kronecker deltas.

    Color 0 lines identify all ``c - 1`` indices of their endpoints, color
    ``i`` lines identify index ``i``.  The sum factorizes over index colors;
    for each one, the black indices are summed out (each black vertex meets
    one color-0 and one color-``i`` delta) and every white assignment is
    tested against the resulting constraints.
    """
    p, c = g.half_order, g.color_count
    if N ** p > MAX_INDEX_ASSIGNMENTS:
        raise SizeLimitExceeded(f"N^p = {N ** p} exceeds {MAX_INDEX_ASSIGNMENTS}")
    inv0 = g.inverses[0]
    total = 1
    for i in range(1, c):
        mi = g.matchings[i]
        # black b carries delta(x[inv0[b]], y_b) and delta(x[w], y_b) for w with mi[w] = b
        constraints = [(inv0[mi[w]], w) for w in range(p)]
        count = 0
        for x in itertools.product(range(N), repeat=p):
            if all(x[a] == x[b] for a, b in constraints):
                count += 1
        total *= count
    return total


def _pairing_graph(bubbles: Sequence[Bubble], pairing: Sequence[int]) -> ColoredGraph:
    rows: list[list[int]] = [list(pairing)] + [[] for _ in range(bubbles[0].rank)]
    offset = 0
    for b in bubbles:
        for i, m in enumerate(b.graph.matchings):
            rows[i + 1].extend(x + offset for x in m)
        offset += b.half_order
    return build(len(rows), offset, rows)


def gaussian_moment(spec: MomentSpec) -> Fraction:
    """``< prod Tr_B >`` for the normalized Gaussian with covariance ``N^-(D-1) prod delta``."""
    if not spec.bubbles:
        return Fraction(1)
    q = sum(b.half_order for b in spec.bubbles)
    if q > MAX_ORACLE_VERTICES:
        raise SizeLimitExceeded(f"{q} white vertices exceed {MAX_ORACLE_VERTICES}")
    propagator = Fraction(1, spec.N ** (spec.rank - 1))
    total = Fraction(0)
    for pairing in itertools.permutations(range(q)):
        g = _pairing_graph(spec.bubbles, pairing)
        total += delta_network_value(g, spec.N) * propagator ** q
    return total


def _exact_log(value: int, N: int) -> int:
    k = 0
    while value % N == 0 and value > 1:
        value //= N
        k += 1
    if value != 1:
        raise AssertionError(f"delta network value is not a power of {N}")
    return k


def _bubble_scaling(b: ColoredGraph) -> Fraction:
    return bubble_degree_scaling(Bubble.from_graph(b))


def literal_amplitude_exponent(g: ColoredGraph, N: int) -> Fraction:
    """Power of N of the amplitude, from the literal index sum and the action's scalings."""
    if N < 2:
        raise ValueError("the exponent is only readable for N >= 2")
    D = g.color_count - 1
    bubble_part = build(D, g.half_order, g.matchings[1:])
    scalings = sum((D - 1 + _bubble_scaling(b) for b in connected_components(bubble_part)), Fraction(0))
    return _exact_log(delta_network_value(g, N), N) + scalings - (D - 1) * g.half_order


def verify_amplitude(g: ColoredGraph, N: int) -> bool:
    """Compare the literal amplitude with ``N^(D - 2 omega / (D-1)!)``.

    Integral exponents are compared as exact powers of N; fractional ones
    (possible for ``D >= 4``) through their exponents.
    """
    if not is_connected(g):
        raise Disconnected("amplitude theorem applies to connected graphs")
    theorem = degree(g).amplitude_exponent
    if N == 1:
        return delta_network_value(g, 1) == 1
    literal = literal_amplitude_exponent(g, N)
    if theorem.denominator == 1 and literal.denominator == 1:
        return Fraction(N) ** int(theorem) == Fraction(N) ** int(literal)
    return theorem == literal
