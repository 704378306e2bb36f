"""Heavy path search by backwards depth-first search.

Given a graph that is Eulerian or has a single (s, r) defect, and an edge
weighting in which every vertex other than ``r`` sends out total weight at
least one, a DFS from ``r`` that walks edges from head to tail and always
tries the heaviest in-edge first ends its tree at a vertex ``u`` whose
tree path to ``r`` weighs at least one. For each out-edge ``u -> x`` the
tree path enters ``x`` through an edge at least as heavy, and all such
``x`` lie on the path.

The guarantee needs a simple digraph: with ``k`` parallel copies of
``u -> x`` only one of them is dominated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .digraph import (
    Defect,
    DirPath,
    Invalid,
    MultiDigraph,
    terminal_state,
    weak_component_of,
)
from .errors import MissingWeight, PreconditionViolated, VertexOutOfRange

EdgeWeighting = dict[int, Fraction]
StopRule = Literal["last", "first-closed"]
STOP_RULES: tuple[str, ...] = ("last", "first-closed")


def uniform_weighting(g: MultiDigraph) -> EdgeWeighting:
    """Weight ``1/out_deg(src)`` on every live edge, so each non-sink sends out exactly 1."""
    src, out_deg = g.src, g.out_deg
    return {e: Fraction(1, out_deg[src[e]]) for e in g.live_edge_ids()}


def out_weight(g: MultiDigraph, w: EdgeWeighting, v: int) -> Fraction:
    try:
        return sum((w[e] for e in g.out_edges(v)), Fraction(0))
    except KeyError as exc:
        raise MissingWeight(exc.args[0]) from None


def path_weight(w: EdgeWeighting, p: DirPath) -> Fraction:
    total = Fraction(0)
    for e in p.edge_ids:
        try:
            total += w[e]
        except KeyError:
            raise MissingWeight(e) from None
    return total


@dataclass
class BackwardsDfs:
    root: int
    order: list[int]              # vertices in first-visit order
    parent_edge: dict[int, int]   # vertex -> tree edge leading towards the root
    u: int                        # chosen start vertex of the heavy path
    complete: bool                # False when the search stopped early

    def path(self, g: MultiDigraph) -> DirPath:
        ids = []
        x = self.u
        while x != self.root:
            e = self.parent_edge[x]
            ids.append(e)
            x = g.dst[e]
        return DirPath.from_edges(g, ids)


def check_preconditions(g: MultiDigraph, w: EdgeWeighting, r: int) -> None:
    if not 0 <= r < g.n:
        raise VertexOutOfRange(f"vertex {r} outside [0, {g.n})")
    state = terminal_state(g)
    if isinstance(state, Invalid):
        raise PreconditionViolated("terminal", state.describe())
    if isinstance(state, Defect) and state.r != r:
        raise PreconditionViolated(
            "terminal", f"graph has defect sink {state.r}, search was rooted at {r}")
    if g.out_deg[r] == 0 and g.in_deg[r] == 0:
        raise PreconditionViolated("component", f"vertex {r} has no live edges")
    for v in weak_component_of(g, r):
        if v != r and g.out_deg[v] > 0 and out_weight(g, w, v) < 1:
            raise PreconditionViolated(
                "weight", f"vertex {v} has outgoing weight {out_weight(g, w, v)} < 1")


def backwards_dfs(g: MultiDigraph, w: EdgeWeighting, r: int,
                  rule: StopRule = "last") -> BackwardsDfs:
    """Iterative DFS from ``r`` over reversed live edges, heaviest in-edge first.

    Ties between equally heavy in-edges go to the smaller source vertex, then
    the smaller edge id. With ``rule="last"`` the search runs to completion
    and ``u`` is the last vertex visited. With ``rule="first-closed"`` it
    stops at the first vertex whose live out-neighbours all sit on the
    current DFS stack; the last vertex always qualifies, so the stop is
    never later than the full search.
    """
    if rule not in STOP_RULES:
        raise ValueError(f"unknown stop rule {rule!r}")
    src, dst = g.src, g.dst

    def ordered_in_edges(v: int) -> list[int]:
        es = g.in_edges(v)
        try:
            es.sort(key=lambda e: (-w[e], src[e], e))
        except KeyError as exc:
            raise MissingWeight(exc.args[0]) from None
        return es

    parent: dict[int, int] = {r: -1}
    order = [r]
    on_stack = {r}
    stack = [(r, iter(ordered_in_edges(r)))]
    early = rule == "first-closed"
    while stack:
        v, candidates = stack[-1]
        for e in candidates:
            x = src[e]
            if x in parent:
                continue
            parent[x] = e
            order.append(x)
            if early and all(dst[f] in on_stack for f in g.out_edges(x)):
                del parent[r]
                return BackwardsDfs(r, order, parent, x, complete=False)
            on_stack.add(x)
            stack.append((x, iter(ordered_in_edges(x))))
            break
        else:
            stack.pop()
            on_stack.discard(v)
    del parent[r]
    return BackwardsDfs(r, order, parent, order[-1], complete=True)


def find_heavy_path(g: MultiDigraph, w: EdgeWeighting, r: int,
                    rule: StopRule = "last", check: bool = True) -> DirPath:
    """Return the DFS-tree path from the chosen vertex ``u`` to ``r``.

    Raises PreconditionViolated when ``check`` is set and the graph, root or
    weighting does not meet the search's requirements.
    """
    if check:
        check_preconditions(g, w, r)
    return backwards_dfs(g, w, r, rule).path(g)


def out_neighbours_on_path(g: MultiDigraph, p: DirPath) -> bool:
    on_path = set(p.vertices)
    return all(g.dst[e] in on_path for e in g.out_edges(p.start))


def dominating_in_edges(g: MultiDigraph, w: EdgeWeighting, p: DirPath) -> bool:
    """Each out-edge ``u -> x`` of the path start is outweighed by the path's edge into ``x``."""
    entering = {p.vertices[i + 1]: e for i, e in enumerate(p.edge_ids)}
    for e in g.out_edges(p.start):
        x = g.dst[e]
        if x not in entering or w[entering[x]] < w[e]:
            return False
    return True
