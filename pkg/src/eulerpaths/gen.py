"""Graph families: cycles, rotational tournaments, oriented bipartite graphs
and seeded random regular Eulerian digraphs."""

from __future__ import annotations

from .digraph import MultiDigraph
from .errors import DomainError
from .rng import SplitMix64

# random probes per bad position before a permutation is redrawn
REPAIR_TRIES = 64


def directed_cycle(n: int) -> MultiDigraph:
    if n < 2:
        raise DomainError(f"directed cycle needs n >= 2, got {n}")
    return MultiDigraph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def rotational_tournament(k: int) -> MultiDigraph:
    """Regular tournament on ``2k+1`` vertices: ``v -> v+i (mod 2k+1)`` for ``i = 1..k``."""
    if k < 1:
        raise DomainError(f"rotational tournament needs k >= 1, got {k}")
    n = 2 * k + 1
    return MultiDigraph.from_edges(n, ((v, (v + i) % n) for v in range(n) for i in range(1, k + 1)))


def oriented_complete_bipartite(a: int, b: int) -> MultiDigraph:
    if a < 1 or b < 1:
        raise DomainError(f"bipartite sides must be positive, got a={a}, b={b}")
    return MultiDigraph.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def random_eulerian(n: int, t: int, seed: int) -> MultiDigraph:
    """Simple ``t``-in ``t``-out digraph, the union of ``t`` edge-disjoint derangements.

    Permutation ``j`` contributes edges ``v -> p_j(v)`` in vertex order. It
    starts as a SplitMix64 Fisher-Yates shuffle; each position whose image
    is a fixed point or repeats an earlier edge is repaired by swapping
    images with a random partner, accepted only if both positions come out
    valid. After ``REPAIR_TRIES`` failed probes the permutation is redrawn.
    A valid permutation always exists while ``t <= n - 1`` (the leftover
    allowed pairs form a regular bipartite graph, which has a perfect
    matching), so the loop terminates with probability one.
    """
    if n < 2 or t < 1:
        raise DomainError(f"random Eulerian graph needs n >= 2 and t >= 1, got n={n}, t={t}")
    if t > n - 1:
        raise DomainError(f"a simple {t}-regular digraph needs n >= t + 1, got n={n}")
    rng = SplitMix64(seed)
    used: set[int] = set()

    def bad(v: int, x: int) -> bool:
        return x == v or v * n + x in used

    g = MultiDigraph(n)
    for _ in range(t):
        while True:
            p = rng.permutation(n)
            if _repair(p, bad, rng):
                break
        for v in range(n):
            used.add(v * n + p[v])
            g.add_edge(v, p[v])
    return g


def _repair(p: list[int], bad, rng: SplitMix64) -> bool:
    n = len(p)
    for v in range(n):
        if not bad(v, p[v]):
            continue
        for _ in range(REPAIR_TRIES):
            w = rng.below(n)
            if w != v and not bad(v, p[w]) and not bad(w, p[v]):
                p[v], p[w] = p[w], p[v]
                break
        else:
            return False
    return True
