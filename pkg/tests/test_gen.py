import pytest
from hypothesis import given, settings, strategies as st

from eulerpaths.decompose import decompose_paths
from eulerpaths.digraph import Eulerian, Invalid, Defect, terminal_state
from eulerpaths.errors import DomainError
from eulerpaths.formats import format_edge_list
from eulerpaths.gen import (
    directed_cycle,
    oriented_complete_bipartite,
    random_eulerian,
    rotational_tournament,
)
from eulerpaths.oracle import brute_longest_path


def test_directed_cycle_examples():
    assert directed_cycle(3).live_edges() == [(0, 1), (1, 2), (2, 0)]
    assert directed_cycle(2).live_edges() == [(0, 1), (1, 0)]
    with pytest.raises(DomainError):
        directed_cycle(1)


@pytest.mark.parametrize("n", range(2, 11))
def test_cycle_decomposes_into_two_paths(n):
    dec = decompose_paths(directed_cycle(n))
    assert [len(p) for p in dec.paths] == [n - 1, 1]


def test_tournament_examples():
    assert rotational_tournament(1).live_edges() == directed_cycle(3).live_edges()
    t2 = rotational_tournament(2)
    assert [v for u, v in t2.live_edges() if u == 0] == [1, 2]
    assert terminal_state(t2) == Eulerian()
    t5 = rotational_tournament(5)
    assert (t5.n, t5.m_live) == (11, 55)
    with pytest.raises(DomainError):
        rotational_tournament(0)


@pytest.mark.parametrize("k", range(1, 21))
def test_tournament_is_regular_tournament(k):
    g = rotational_tournament(k)
    edges = set(g.live_edges())
    assert len(edges) == g.m_live
    for u in range(g.n):
        for v in range(u + 1, g.n):
            assert ((u, v) in edges) != ((v, u) in edges)
    assert g.out_deg == g.in_deg == [k] * g.n


def test_bipartite_examples():
    g = oriented_complete_bipartite(2, 2)
    assert g.m_live == 4 and isinstance(terminal_state(g), Invalid)
    assert terminal_state(oriented_complete_bipartite(1, 1)) == Defect(0, 1)
    assert brute_longest_path(oriented_complete_bipartite(2, 3)) == 1
    with pytest.raises(DomainError):
        oriented_complete_bipartite(0, 3)


def test_random_eulerian_examples():
    g = random_eulerian(6, 2, 1)
    assert g.out_deg == g.in_deg == [2] * 6
    assert terminal_state(g) == Eulerian()
    assert random_eulerian(2, 1, 123).live_edges() == [(0, 1), (1, 0)]
    assert random_eulerian(9, 3, 5).live_edges() == random_eulerian(9, 3, 5).live_edges()


def test_random_eulerian_seed_fixture():
    assert random_eulerian(6, 2, 1).live_edges() == [
        (0, 5), (1, 2), (2, 0), (3, 4), (4, 1), (5, 3),
        (0, 1), (1, 0), (2, 3), (3, 5), (4, 2), (5, 4),
    ]


def test_random_eulerian_domain():
    with pytest.raises(DomainError):
        random_eulerian(1, 1, 0)
    with pytest.raises(DomainError):
        random_eulerian(4, 0, 0)
    with pytest.raises(DomainError):
        random_eulerian(4, 4, 0)


def test_random_eulerian_fills_complete_digraph():
    # t = n - 1 forces every ordered pair exactly once
    g = random_eulerian(6, 5, 3)
    assert sorted(g.live_edges()) == [(u, v) for u in range(6) for v in range(6) if u != v]


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 40), st.integers(1, 6), st.integers(0, 2**64 - 1))
def test_random_eulerian_properties(n, t, seed):
    t = min(t, n - 1)
    g = random_eulerian(n, t, seed)
    assert g.out_deg == g.in_deg == [t] * n
    assert not g.has_parallel_edges()
    assert all(u != v for u, v in g.live_edges())
    assert format_edge_list(g) == format_edge_list(random_eulerian(n, t, seed))
