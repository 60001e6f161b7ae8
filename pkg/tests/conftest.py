import sys
from pathlib import Path

import pytest
from hypothesis import assume, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from oracles import connected_by_bfs  # noqa: E402
from tensor_melon.graph import build  # noqa: E402


@st.composite
def colored_graphs(draw, min_colors=1, max_colors=5, max_p=5, connected=False):
    c = draw(st.integers(min_colors, max_colors))
    p = draw(st.integers(1, max_p))
    mats = [draw(st.permutations(range(p))) for _ in range(c)]
    g = build(c, p, mats)
    if connected:
        assume(connected_by_bfs(g))
    return g


@pytest.fixture
def dipole4():
    return build(4, 1, [[0]] * 4)


@pytest.fixture
def torus3():
    """Three colors, one face per color pair: genus 1."""
    return build(3, 3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
