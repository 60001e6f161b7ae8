"""Jackets, jacket genera and the degree of a colored graph."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .errors import Disconnected, TooFewColors
from .graph import ColoredGraph, face_count, is_connected, pair_face_counts


@dataclass(frozen=True, order=True)
class Jacket:
    """A cyclic order of all colors, up to rotation and reversal.

    Stored as its least representative: starts at color 0 and the second
    entry is smaller than the last.
    """
    color_cycle: tuple[int, ...]

    def pairs(self) -> list[tuple[int, int]]:
        """Color pairs adjacent in the cycle, each as ``(min, max)``."""
        cyc = self.color_cycle
        n = len(cyc)
        return [tuple(sorted((cyc[k], cyc[(k + 1) % n]))) for k in range(n)]


@dataclass(frozen=True)
class DegreeReport:
    jackets: tuple[tuple[Jacket, int], ...]
    degree: int
    amplitude_exponent: Fraction

    def to_json(self) -> dict:
        return {
            "jackets": [{"cycle": list(j.color_cycle), "genus": g} for j, g in self.jackets],
            "degree": self.degree,
            "amplitude_exponent": fraction_str(self.amplitude_exponent),
        }


def fraction_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def jackets(c: int) -> list[Jacket]:
    if c < 3:
        raise TooFewColors(f"jackets need at least 3 colors, got {c}")
    out = []
    for rest in itertools.permutations(range(1, c)):
        if rest[0] < rest[-1]:
            out.append(Jacket((0,) + rest))
    return sorted(out)


def _genus_from_faces(g: ColoredGraph, jacket_faces: int) -> int:
    p, c = g.half_order, g.color_count
    euler = 2 * p - c * p + jacket_faces
    if euler % 2:
        raise AssertionError(f"odd Euler characteristic {euler}")
    genus = (2 - euler) // 2
    if genus < 0:
        raise AssertionError(f"negative genus {genus}")
    return genus


def _require_connected(g: ColoredGraph) -> None:
    if not is_connected(g):
        raise Disconnected("degree and jacket genus are defined for connected graphs only")


def jacket_genus(g: ColoredGraph, j: Jacket) -> int:
    """Genus of the ribbon graph keeping the faces of adjacent color pairs.

    ``2 - 2g = V - E + F_J`` with ``V = 2p`` and ``E = c p``.
    """
    _require_connected(g)
    counts = pair_face_counts(g)
    return _genus_from_faces(g, sum(counts[pr] for pr in j.pairs()))


def amplitude_exponent(color_count: int, omega: int) -> Fraction:
    """``(c - 1) - 2 omega / (c - 2)!``, the power of N of a closed connected graph."""
    return Fraction(color_count - 1) - Fraction(2 * omega, factorial(color_count - 2))


def degree(g: ColoredGraph) -> DegreeReport:
    _require_connected(g)
    if g.color_count < 3:
        raise TooFewColors(f"degree needs at least 3 colors, got {g.color_count}")
    counts = pair_face_counts(g)
    rows = []
    for j in jackets(g.color_count):
        rows.append((j, _genus_from_faces(g, sum(counts[pr] for pr in j.pairs()))))
    omega = sum(genus for _, genus in rows)
    return DegreeReport(tuple(rows), omega, amplitude_exponent(g.color_count, omega))


def face_formula(color_count: int, half_order: int, omega: int) -> Fraction:
    c, p = color_count, half_order
    return Fraction((c - 1) * (c - 2) * p, 2) + (c - 1) - Fraction(2 * omega, factorial(c - 2))


def face_formula_check(g: ColoredGraph) -> bool:
    report = degree(g)
    return face_count(g) == face_formula(g.color_count, g.half_order, report.degree)
