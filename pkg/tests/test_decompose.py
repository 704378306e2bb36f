import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eulerpaths.decompose import (
    CSV_HEADER,
    Decomposition,
    _path_weights,
    budget_within_bound,
    choose_terminals,
    decompose_paths,
    format_rational,
    harmonic_budget,
    harmonic_number,
    longest_path,
    stats,
    theorem1_bound,
    theorem2_bound,
)
from eulerpaths.digraph import Defect, Eulerian, MultiDigraph, new_graph
from eulerpaths.errors import (
    DomainError,
    EmptyDecomposition,
    EmptyGraph,
    InvalidGraph,
)
from eulerpaths.gen import (
    oriented_complete_bipartite,
    random_eulerian,
    rotational_tournament,
)
from eulerpaths.oracle import validate_decomposition

from .conftest import eulerian_graphs


def test_choose_terminals_examples(c5):
    assert choose_terminals(c5) == (Eulerian(), 0)
    c5.remove_edges([1, 2, 3, 4])
    assert choose_terminals(c5) == (Defect(0, 1), 1)
    with pytest.raises(InvalidGraph):
        choose_terminals(oriented_complete_bipartite(2, 2))
    with pytest.raises(EmptyGraph):
        choose_terminals(new_graph(3))


def test_eulerian_root_skips_isolated_vertices():
    g = MultiDigraph.from_edges(4, [(2, 3), (3, 2)])
    assert choose_terminals(g) == (Eulerian(), 2)


@pytest.mark.parametrize("engine", ["python", "compiled"])
def test_decompose_c5(c5, engine):
    dec = decompose_paths(c5, engine=engine)
    assert [p.vertices for p in dec.paths] == [(1, 2, 3, 4, 0), (0, 1)]
    assert dec.terminals == [(Eulerian(), 0), (Defect(0, 1), 1)]
    assert dec.weights_audit == [4, 1]
    assert dec.serialize() == "1 2 3 4 0\n0 1\n"
    assert c5.m_live == 5  # input untouched


def test_decompose_single_edge_defect_input():
    g = MultiDigraph.from_edges(2, [(0, 1)])
    dec = decompose_paths(g)
    assert dec.T == 1 and dec.paths[0].vertices == (0, 1)


def test_decompose_tournament_k2():
    g = rotational_tournament(2)
    dec = decompose_paths(g)
    assert harmonic_budget(g) == Fraction(15, 2)
    assert dec.T <= 7
    assert validate_decomposition(g, dec) is None


def test_decompose_rejects_invalid():
    with pytest.raises(InvalidGraph) as info:
        decompose_paths(oriented_complete_bipartite(2, 2))
    assert "0:+2 1:+2 2:-2 3:-2" in str(info.value)


def test_decompose_empty_graph():
    dec = decompose_paths(new_graph(4))
    assert dec.T == 0 and dec.serialize() == ""
    s = stats(new_graph(4), dec)
    assert (s.T, s.longest, s.d) == (0, 0, 0)


def test_decompose_keeps_going_across_components():
    g = MultiDigraph.from_edges(7, [(0, 1), (1, 2), (2, 0), (4, 5), (5, 6), (6, 4)])
    dec = decompose_paths(g)
    assert dec.T == 4
    assert validate_decomposition(g, dec) is None


def test_multigraph_decomposes_without_weight_guarantee():
    g = MultiDigraph.from_edges(2, [(0, 1)] * 3 + [(1, 0)] * 3)
    dec = decompose_paths(g)
    assert dec.T == 6
    assert float(harmonic_budget(g)) < 6  # more paths than the simple-graph budget
    assert validate_decomposition(g, dec) is None


def test_harmonic_budget_examples(c5):
    assert harmonic_budget(c5) == 5
    assert harmonic_budget(rotational_tournament(2)) == Fraction(15, 2)
    assert harmonic_budget(new_graph(3)) == 0
    assert harmonic_number(4) == Fraction(25, 12)


def test_theorem2_bound_examples():
    assert theorem2_bound(5, 1) == 5
    assert theorem2_bound(11, 5) == pytest.approx(28.703817, abs=1e-6)
    with pytest.raises(DomainError):
        theorem2_bound(5, Fraction(1, 2))


def test_theorem1_bound_examples():
    assert theorem1_bound(1) == 1
    assert theorem1_bound(5) == pytest.approx(1.916121, abs=1e-6)
    assert theorem1_bound(math.e) == pytest.approx(math.e / 2)
    with pytest.raises(DomainError):
        theorem1_bound(Fraction(1, 2))


def test_budget_within_bound_is_tight_at_d_1():
    # n vertices of out-degree 1: budget n equals n(ln 1 + 1) exactly
    assert budget_within_bound(Fraction(5), 5, Fraction(1))
    assert not budget_within_bound(Fraction(5) + Fraction(1, 10**6), 5, Fraction(1))


def test_longest_path_examples(c5):
    assert longest_path(decompose_paths(c5)).vertices == (1, 2, 3, 4, 0)
    single = decompose_paths(MultiDigraph.from_edges(2, [(0, 1)]))
    assert longest_path(single) is single.paths[0]
    assert len(longest_path(decompose_paths(rotational_tournament(2)))) >= 2
    with pytest.raises(EmptyDecomposition):
        longest_path(Decomposition([], [], 0, 0, []))


def test_stats_examples(c5):
    s = stats(c5, decompose_paths(c5))
    assert (s.n, s.m, s.d, s.T, s.longest) == (5, 5, 1, 2, 4)
    t5 = rotational_tournament(5)
    s = stats(t5, decompose_paths(t5))
    assert (s.n, s.m, s.d) == (11, 55, 5)


def test_csv_golden_rows(c5):
    assert CSV_HEADER == "n,m,d,T,harmonic_budget,theorem2_bound,longest,theorem1_bound"
    assert stats(c5, decompose_paths(c5)).csv_row() == "5,5,1.000000,2,5.000000,5.000000,4,1.000000"
    t2 = rotational_tournament(2)
    assert stats(t2, decompose_paths(t2)).csv_row() == "5,10,2.000000,3,7.500000,8.465736,4,1.181232"


def test_csv_leaves_bounds_empty_below_d_1():
    g = MultiDigraph.from_edges(4, [(0, 1), (1, 0)])
    assert stats(g, decompose_paths(g)).csv_row() == "4,2,0.500000,2,2.000000,,1,"


def test_format_rational_rounds_half_even():
    assert format_rational(Fraction(1, 3)) == "0.333333"
    assert format_rational(Fraction(2, 3)) == "0.666667"
    assert format_rational(Fraction(1, 2 * 10**6)) == "0.000000"
    assert format_rational(Fraction(3, 2 * 10**6)) == "0.000002"


def test_path_weights_without_common_denominator():
    primes = [p for p in range(2, 60) if all(p % q for q in range(2, p))]
    degs = np.array(primes * 2, dtype=np.int64)
    ptr = np.array([0, len(primes), 2 * len(primes)], dtype=np.int64)
    expected = sum(Fraction(1, p) for p in primes)
    assert _path_weights(degs, ptr) == [expected, expected]


@settings(max_examples=60, deadline=None)
@given(eulerian_graphs(max_n=30, max_t=5), st.sampled_from(["last", "first-closed"]))
def test_engines_agree(g, rule):
    a = decompose_paths(g, rule=rule, engine="python")
    b = decompose_paths(g, rule=rule, engine="compiled")
    assert a.serialize() == b.serialize()
    assert [p.edge_ids for p in a.paths] == [p.edge_ids for p in b.paths]
    assert a.terminals == b.terminals
    assert a.weights_audit == b.weights_audit


@settings(max_examples=40, deadline=None)
@given(eulerian_graphs(max_n=30, max_t=5))
def test_engines_agree_on_defect_input(g):
    # strip one path so the input starts in the single-defect state
    first = decompose_paths(g, engine="python").paths[0]
    g.remove_path_edges(first)
    a = decompose_paths(g, engine="python")
    b = decompose_paths(g, engine="compiled")
    assert a.serialize() == b.serialize() and a.terminals == b.terminals


@settings(max_examples=100, deadline=None)
@given(eulerian_graphs(max_n=20, max_t=5), st.sampled_from(["last", "first-closed"]))
def test_decomposition_invariants(g, rule):
    dec = decompose_paths(g, rule=rule)
    assert validate_decomposition(g, dec) is None
    assert all(w >= 1 for w in dec.weights_audit)
    budget = harmonic_budget(g)
    assert sum(dec.weights_audit) == budget
    assert dec.T <= budget
    d = Fraction(g.m_live, g.n)
    assert budget_within_bound(budget, g.n, d)
    assert len(longest_path(dec)) >= -(-g.m_live // dec.T)
    for (state, r), p in zip(dec.terminals, dec.paths):
        assert p.end == r
        if isinstance(state, Defect):
            assert state.r == r


def test_decomposition_is_deterministic():
    g = random_eulerian(40, 4, 11)
    assert decompose_paths(g).serialize() == decompose_paths(g.copy()).serialize()


def test_unknown_options_rejected(c5):
    with pytest.raises(ValueError):
        decompose_paths(c5, rule="first")
    with pytest.raises(ValueError):
        decompose_paths(c5, engine="gpu")
