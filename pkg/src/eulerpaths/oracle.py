"""Exhaustive ground truth for small graphs, and validators for paths and decompositions.

Nothing here shares code with the search or decomposition modules.
Validators return ``None`` when the input is fine and a short description
of the first problem otherwise.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from typing import Sequence

from .digraph import DirPath, MultiDigraph
from .errors import TooLarge

LONGEST_PATH_MAX_EDGES = 25
MIN_DECOMPOSITION_MAX_EDGES = 10


def brute_longest_path(g: MultiDigraph, max_edges: int = LONGEST_PATH_MAX_EDGES) -> int:
    """Edge count of a longest simple directed path, by trying every simple path."""
    if g.m_live > max_edges:
        raise TooLarge(f"{g.m_live} live edges exceed the longest-path guard of {max_edges}")
    succ: dict[int, set[int]] = defaultdict(set)
    for u, v in g.live_edges():
        succ[u].add(v)

    best = 0
    on_path: set[int] = set()

    def extend(v: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        on_path.add(v)
        for x in succ[v]:
            if x not in on_path:
                extend(x, length + 1)
        on_path.discard(v)

    for v in list(succ):
        extend(v, 0)
    return best


def brute_min_path_decomposition(g: MultiDigraph,
                                 max_edges: int = MIN_DECOMPOSITION_MAX_EDGES) -> int:
    """Fewest simple paths partitioning the live edges.

    Memoised over the set of uncovered edges; the smallest uncovered edge
    must lie on some path of an optimal cover, so only paths through it
    are branched on.
    """
    if g.m_live > max_edges:
        raise TooLarge(
            f"{g.m_live} live edges exceed the min-decomposition guard of {max_edges}")
    edges = g.live_edges()
    k = len(edges)
    out_by_vertex: dict[int, list[int]] = defaultdict(list)
    in_by_vertex: dict[int, list[int]] = defaultdict(list)
    for i, (u, v) in enumerate(edges):
        out_by_vertex[u].append(i)
        in_by_vertex[v].append(i)

    def paths_through(first: int, mask: int) -> set[int]:
        found: set[int] = set()

        def backward(head: int, used: int, verts: set[int]) -> None:
            found.add(used)
            for i in in_by_vertex[head]:
                a = edges[i][0]
                if mask >> i & 1 and not used >> i & 1 and a not in verts:
                    verts.add(a)
                    backward(a, used | 1 << i, verts)
                    verts.discard(a)

        def forward(tail: int, used: int, verts: set[int]) -> None:
            backward(edges[first][0], used, verts)
            for i in out_by_vertex[tail]:
                b = edges[i][1]
                if mask >> i & 1 and not used >> i & 1 and b not in verts:
                    verts.add(b)
                    forward(b, used | 1 << i, verts)
                    verts.discard(b)

        u, v = edges[first]
        forward(v, 1 << first, {u, v})
        return found

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        first = (mask & -mask).bit_length() - 1
        return 1 + min(best(mask & ~p) for p in paths_through(first, mask))

    return best((1 << k) - 1)


def validate_path(g: MultiDigraph, p: DirPath) -> str | None:
    ids = p.edge_ids
    if not ids:
        return "empty path"
    for i, e in enumerate(ids):
        if not g.is_live(e):
            return f"edge not live: {e}"
        if i and g.dst[ids[i - 1]] != g.src[e]:
            return f"edges do not chain: {ids[i - 1]} then {e}"
    verts = [g.src[ids[0]], *(g.dst[e] for e in ids)]
    if tuple(verts) != tuple(p.vertices):
        return f"vertex sequence {list(p.vertices)} does not match edges {list(ids)}"
    if len(set(verts)) != len(verts):
        return "not simple: repeated vertex"
    return None


def validate_decomposition(g: MultiDigraph, dec) -> str | None:
    """Replay the paths on a copy of ``g``, consuming edges in order.

    ``dec`` is a Decomposition or any sequence of DirPath.
    """
    paths: Sequence[DirPath] = getattr(dec, "paths", dec)
    h = g.copy()
    consumed: set[int] = set()
    for t, p in enumerate(paths):
        for e in p.edge_ids:
            if e in consumed:
                return f"path {t}: double-covered edge {e}"
        problem = validate_path(h, p)
        if problem:
            return f"path {t}: {problem}"
        h.remove_path_edges(p)
        consumed.update(p.edge_ids)
    if h.m_live:
        e = h.live_edge_ids()[0]
        return f"uncovered edge {e} ({h.src[e]}->{h.dst[e]})"
    return None


def validate_vertex_paths(g: MultiDigraph, vertex_paths: Sequence[Sequence[int]]) -> str | None:
    """Validate paths given as vertex sequences, e.g. read back from a paths file.

    Each step ``a -> b`` takes the smallest-id unconsumed edge ``a -> b``;
    any choice among parallel edges gives the same verdict.
    """
    pending: dict[tuple[int, int], list[int]] = defaultdict(list)
    for e in reversed(g.live_edge_ids()):
        pending[g.src[e], g.dst[e]].append(e)
    exists = set(pending)
    paths = []
    for t, verts in enumerate(vertex_paths):
        ids = []
        for a, b in zip(verts, verts[1:]):
            stock = pending.get((a, b))
            if not stock:
                if (a, b) in exists:
                    return f"path {t}: double-covered edge {a}->{b}"
                return f"path {t}: no edge {a}->{b} in graph"
            ids.append(stock.pop())
        paths.append(DirPath.from_edges(g, ids))
    return validate_decomposition(g, paths)
