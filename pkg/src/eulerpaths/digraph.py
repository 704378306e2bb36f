"""Mutable loopless directed multigraph with live-edge bookkeeping.

Edges get stable integer ids in insertion order. Removing an edge only
clears its ``alive`` flag, so ids stay valid for the whole lifetime of a
graph and can be used in audit trails.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import EdgeNotLive, SelfLoopRejected, VertexOutOfRange


class EdgeRecord(NamedTuple):
    id: int
    src: int
    dst: int
    alive: bool


@dataclass(frozen=True)
class Eulerian:
    def describe(self) -> str:
        return "eulerian"


@dataclass(frozen=True)
class Defect:
    """Balanced except ``s`` (one surplus out-edge) and ``r`` (one surplus in-edge)."""

    s: int
    r: int

    def describe(self) -> str:
        return f"defect s={self.s} r={self.r}"


@dataclass(frozen=True)
class Invalid:
    # (vertex, out_deg - in_deg) for every imbalanced vertex, by vertex id
    imbalance: tuple[tuple[int, int], ...]

    def describe(self) -> str:
        parts = " ".join(f"{v}:{d:+d}" for v, d in self.imbalance)
        return f"imbalanced vertices (out-in): {parts}"


TerminalState = Eulerian | Defect | Invalid


@dataclass(frozen=True)
class DirPath:
    """A directed path stored as edge ids plus the vertex sequence they trace."""

    edge_ids: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def from_edges(cls, g: MultiDigraph, edge_ids: Iterable[int]) -> DirPath:
        ids = tuple(edge_ids)
        if not ids:
            return cls((), ())
        verts = [g.src[ids[0]]]
        verts.extend(g.dst[e] for e in ids)
        return cls(ids, tuple(verts))

    def __len__(self) -> int:
        return len(self.edge_ids)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]


class MultiDigraph:
    """Directed multigraph on vertices ``0..n-1``; parallel edges allowed, loops not."""

    __slots__ = ("n", "src", "dst", "alive", "out_deg", "in_deg", "m_live",
                 "_out", "_in", "_imbalance")

    def __init__(self, n: int) -> None:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self.src: list[int] = []
        self.dst: list[int] = []
        self.alive = bytearray()
        self.out_deg = [0] * n
        self.in_deg = [0] * n
        self.m_live = 0
        self._out: list[list[int]] = [[] for _ in range(n)]
        self._in: list[list[int]] = [[] for _ in range(n)]
        # out_deg - in_deg, only for vertices where it is non-zero
        self._imbalance: dict[int, int] = {}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> MultiDigraph:
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def __repr__(self) -> str:
        return f"MultiDigraph(n={self.n}, m={self.m}, m_live={self.m_live})"

    @property
    def m(self) -> int:
        """Number of edges ever inserted, live or not."""
        return len(self.src)

    def _shift(self, v: int, delta: int) -> None:
        b = self._imbalance.get(v, 0) + delta
        if b:
            self._imbalance[v] = b
        else:
            self._imbalance.pop(v, None)

    def add_edge(self, u: int, v: int) -> int:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise VertexOutOfRange(f"edge ({u}, {v}) outside vertex range [0, {self.n})")
        if u == v:
            raise SelfLoopRejected(f"self-loop at vertex {u}")
        e = len(self.src)
        self.src.append(u)
        self.dst.append(v)
        self.alive.append(1)
        self._out[u].append(e)
        self._in[v].append(e)
        self.out_deg[u] += 1
        self.in_deg[v] += 1
        self.m_live += 1
        self._shift(u, 1)
        self._shift(v, -1)
        return e

    def remove_edges(self, edge_ids: Sequence[int]) -> None:
        """Kill the given edges. Either all of them go or none does."""
        seen = set()
        for e in edge_ids:
            if not (0 <= e < len(self.src)) or not self.alive[e] or e in seen:
                raise EdgeNotLive(e)
            seen.add(e)
        for e in edge_ids:
            u, v = self.src[e], self.dst[e]
            self.alive[e] = 0
            self.out_deg[u] -= 1
            self.in_deg[v] -= 1
            self._shift(u, -1)
            self._shift(v, 1)
        self.m_live -= len(edge_ids)

    def remove_path_edges(self, p: DirPath) -> None:
        self.remove_edges(p.edge_ids)

    def edge(self, e: int) -> EdgeRecord:
        return EdgeRecord(e, self.src[e], self.dst[e], bool(self.alive[e]))

    def is_live(self, e: int) -> bool:
        return 0 <= e < len(self.src) and bool(self.alive[e])

    def out_edges(self, v: int) -> list[int]:
        alive = self.alive
        return [e for e in self._out[v] if alive[e]]

    def in_edges(self, v: int) -> list[int]:
        alive = self.alive
        return [e for e in self._in[v] if alive[e]]

    def live_edge_ids(self) -> list[int]:
        return [e for e, a in enumerate(self.alive) if a]

    def live_edges(self) -> list[tuple[int, int]]:
        return [(self.src[e], self.dst[e]) for e in self.live_edge_ids()]

    def imbalance(self) -> dict[int, int]:
        return dict(self._imbalance)

    def has_parallel_edges(self) -> bool:
        seen = set()
        for e in self.live_edge_ids():
            key = (self.src[e], self.dst[e])
            if key in seen:
                return True
            seen.add(key)
        return False

    def copy(self) -> MultiDigraph:
        h = MultiDigraph.__new__(MultiDigraph)
        h.n = self.n
        h.src = self.src.copy()
        h.dst = self.dst.copy()
        h.alive = bytearray(self.alive)
        h.out_deg = self.out_deg.copy()
        h.in_deg = self.in_deg.copy()
        h.m_live = self.m_live
        h._out = [lst.copy() for lst in self._out]
        h._in = [lst.copy() for lst in self._in]
        h._imbalance = dict(self._imbalance)
        return h


def new_graph(n: int) -> MultiDigraph:
    return MultiDigraph(n)


def add_edge(g: MultiDigraph, u: int, v: int) -> int:
    return g.add_edge(u, v)


def remove_path_edges(g: MultiDigraph, p: DirPath) -> None:
    g.remove_path_edges(p)


def terminal_state(g: MultiDigraph) -> TerminalState:
    imb = g._imbalance
    if not imb:
        return Eulerian()
    if len(imb) == 2:
        (a, da), (b, db) = imb.items()
        if {da, db} == {1, -1}:
            return Defect(s=a, r=b) if da == 1 else Defect(s=b, r=a)
    return Invalid(tuple(sorted(imb.items())))


def weak_component_of(g: MultiDigraph, r: int) -> set[int]:
    """Vertices reachable from ``r`` over live edges, ignoring direction."""
    if not 0 <= r < g.n:
        raise VertexOutOfRange(f"vertex {r} outside [0, {g.n})")
    src, dst, alive = g.src, g.dst, g.alive
    seen = {r}
    queue = deque([r])
    while queue:
        v = queue.popleft()
        for e in g._out[v]:
            if alive[e] and dst[e] not in seen:
                seen.add(dst[e])
                queue.append(dst[e])
        for e in g._in[v]:
            if alive[e] and src[e] not in seen:
                seen.add(src[e])
                queue.append(src[e])
    return seen
