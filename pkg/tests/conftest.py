import pytest
from hypothesis import strategies as st

from eulerpaths.digraph import MultiDigraph
from eulerpaths.gen import random_eulerian

# filled by test_acceptance.py, printed after the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@st.composite
def eulerian_graphs(draw, max_n=12, max_t=4):
    n = draw(st.integers(2, max_n))
    t = draw(st.integers(1, min(max_t, n - 1)))
    seed = draw(st.integers(0, 2**64 - 1))
    return random_eulerian(n, t, seed)


@pytest.fixture
def c5():
    return MultiDigraph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def two_triangles():
    return MultiDigraph.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: (len(k.split()[0]), k)):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
