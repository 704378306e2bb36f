"""Iterative path removal and the bounds it certifies.

Each round recomputes the uniform weighting on the residual graph, finds a
heavy path ending at the current sink and removes it. Every removed path
weighs at least one, while vertex ``v`` contributes ``1/d, 1/(d-1), ..., 1``
over all rounds (``d`` its original out-degree). Hence the number of paths
is at most ``sum_v H(out_deg(v)) <= n (ln d + 1)``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from typing import Literal

import numpy as np

from .digraph import (
    Defect,
    DirPath,
    Eulerian,
    Invalid,
    MultiDigraph,
    TerminalState,
    terminal_state,
)
from .errors import (
    DomainError,
    EmptyDecomposition,
    EmptyGraph,
    InvalidGraph,
    InvariantViolation,
)
from .lemma_path import (
    STOP_RULES,
    StopRule,
    backwards_dfs,
    dominating_in_edges,
    out_neighbours_on_path,
    path_weight,
    uniform_weighting,
)

Engine = Literal["auto", "python", "compiled"]

# below this many edges the interpreter loop beats JIT start-up
AUTO_COMPILED_MIN_EDGES = 2000

CSV_HEADER = "n,m,d,T,harmonic_budget,theorem2_bound,longest,theorem1_bound"


@dataclass
class Decomposition:
    paths: list[DirPath]
    terminals: list[tuple[TerminalState, int]]
    original_n: int
    original_m: int
    weights_audit: list[Fraction]
    rule: str = "last"

    @property
    def T(self) -> int:
        return len(self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def serialize(self) -> str:
        return "".join(" ".join(map(str, p.vertices)) + "\n" for p in self.paths)


@dataclass
class GraphStats:
    n: int
    m: int
    d: Fraction
    T: int
    longest: int
    harmonic_budget: Fraction = field(default=Fraction(0))

    def csv_row(self) -> str:
        if self.d >= 1:
            t2 = f"{theorem2_bound(self.n, self.d):.6f}"
            t1 = f"{theorem1_bound(self.d):.6f}"
        else:
            t2 = t1 = ""
        return ",".join([
            str(self.n), str(self.m), format_rational(self.d), str(self.T),
            format_rational(self.harmonic_budget), t2, str(self.longest), t1,
        ])


def format_rational(q: Fraction, digits: int = 6) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(q.numerator) / Decimal(q.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def harmonic_number(k: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


def harmonic_budget(g: MultiDigraph) -> Fraction:
    """Exact ``sum_v H(out_deg(v))`` over the live out-degrees, with ``H(0) = 0``."""
    counts = Counter(d for d in g.out_deg if d)
    total = Fraction(0)
    h = Fraction(0)
    for k in range(1, max(counts, default=0) + 1):
        h += Fraction(1, k)
        if k in counts:
            total += counts[k] * h
    return total


def theorem2_bound(n: int, d: Fraction | float) -> float:
    """Path-count bound ``n (ln d + 1)``."""
    if n < 1 or d < 1:
        raise DomainError(f"bound needs n >= 1 and d >= 1, got n={n}, d={d}")
    return n * (math.log(d) + 1)


def theorem1_bound(d: Fraction | float) -> float:
    """Long-path bound ``d / (ln d + 1)``."""
    if d < 1:
        raise DomainError(f"bound needs d >= 1, got d={d}")
    return float(d) / (math.log(d) + 1)


def budget_within_bound(budget: Fraction, n: int, d: Fraction, slack: str = "1e-9") -> bool:
    """Compare the exact harmonic budget against ``n (ln d + 1)`` at 50 digits."""
    with localcontext() as ctx:
        ctx.prec = 50
        lhs = Decimal(budget.numerator) / Decimal(budget.denominator)
        dd = Decimal(d.numerator) / Decimal(d.denominator)
        rhs = n * (dd.ln() + 1) + Decimal(slack)
        return lhs <= rhs


def choose_terminals(g: MultiDigraph) -> tuple[TerminalState, int]:
    if g.m_live == 0:
        raise EmptyGraph("graph has no live edges")
    state = terminal_state(g)
    if isinstance(state, Invalid):
        raise InvalidGraph(state)
    if isinstance(state, Defect):
        return state, state.r
    return state, next(v for v, d in enumerate(g.out_deg) if d > 0)


def _is_simple(g: MultiDigraph) -> bool:
    ids = g.live_edge_ids()
    if not ids:
        return True
    keys = np.asarray(g.src, np.int64)[ids] * g.n + np.asarray(g.dst, np.int64)[ids]
    return np.unique(keys).size == keys.size


def decompose_paths(g: MultiDigraph, rule: StopRule = "last", engine: Engine = "auto",
                    check: bool = True) -> Decomposition:
    """Partition the live edges of ``g`` into simple directed paths.

    ``g`` itself is not modified. With ``check`` set, every round asserts
    the closure and domination properties of the heavy path, the residual's
    balance condition, and at the end coverage, the exact weight accounting
    and (for simple graphs) per-path weight at least one. Failures raise
    InvariantViolation.
    """
    if rule not in STOP_RULES:
        raise ValueError(f"unknown stop rule {rule!r}")
    state = terminal_state(g)
    if isinstance(state, Invalid):
        raise InvalidGraph(state)
    if engine == "auto":
        engine = "compiled" if g.m_live >= AUTO_COMPILED_MIN_EDGES else "python"
    if engine == "python":
        dec = _decompose_python(g, rule, check)
    elif engine == "compiled":
        dec = _decompose_compiled(g, rule, check, state)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    if check:
        audit_decomposition(g, dec)
    return dec


def _decompose_python(g: MultiDigraph, rule: StopRule, check: bool) -> Decomposition:
    h = g.copy()
    paths: list[DirPath] = []
    terminals: list[tuple[TerminalState, int]] = []
    weights: list[Fraction] = []
    while h.m_live:
        state, r = choose_terminals(h)
        w = uniform_weighting(h)
        p = backwards_dfs(h, w, r, rule).path(h)
        if check:
            if not out_neighbours_on_path(h, p):
                raise InvariantViolation(f"round {len(paths)}: start {p.start} has an "
                                         "out-neighbour off the path")
            if not dominating_in_edges(h, w, p):
                raise InvariantViolation(f"round {len(paths)}: path in-edge lighter than "
                                         f"an out-edge of {p.start}")
        weights.append(path_weight(w, p))
        h.remove_path_edges(p)
        paths.append(p)
        terminals.append((state, r))
        if check and isinstance(terminal_state(h), Invalid):
            raise InvariantViolation(f"round {len(paths) - 1}: residual lost the balance condition")
    return Decomposition(paths, terminals, g.n, g.m_live, weights, rule)


def _decompose_compiled(g: MultiDigraph, rule: StopRule, check: bool,
                        state: TerminalState) -> Decomposition:
    from . import _kernel

    live = np.flatnonzero(np.frombuffer(bytes(g.alive), dtype=np.uint8))
    src = np.asarray(g.src, np.int64)[live]
    dst = np.asarray(g.dst, np.int64)[live]
    s0, r0 = (state.s, state.r) if isinstance(state, Defect) else (-1, -1)
    eids, ptr, degs, roots, sources, status = _kernel.decompose_kernel(
        g.n, src, dst, rule == "first-closed", s0, r0, check)
    if status != _kernel.OK:
        raise InvariantViolation(f"round {len(roots) - 1}: {_kernel.STATUS_TEXT[status]}")

    weights = _path_weights(degs, ptr)
    ids = live[eids].tolist()
    starts = src[eids[ptr[:-1]]].tolist() if len(eids) else []
    heads = dst[eids].tolist()
    offsets = ptr.tolist()
    paths = []
    for t in range(len(offsets) - 1):
        a, b = offsets[t], offsets[t + 1]
        paths.append(DirPath(tuple(ids[a:b]), (starts[t], *heads[a:b])))
    eul = Eulerian()
    terminals = [(eul if s < 0 else Defect(s, r), r)
                 for s, r in zip(sources.tolist(), roots.tolist())]
    return Decomposition(paths, terminals, g.n, g.m_live, weights, rule)


def _path_weights(degs: np.ndarray, ptr: np.ndarray) -> list[Fraction]:
    """Exact per-path weights from the out-degrees seen at removal time."""
    if len(degs) == 0:
        return []
    lcm = math.lcm(*np.unique(degs).tolist())
    if lcm * len(degs) < 2**62:
        nums = np.add.reduceat(lcm // degs, ptr[:-1])
        return [Fraction(int(x), lcm) for x in nums]
    offsets = ptr.tolist()
    dl = degs.tolist()
    return [sum((Fraction(1, k) for k in dl[a:b]), Fraction(0))
            for a, b in zip(offsets[:-1], offsets[1:])]


def audit_decomposition(g: MultiDigraph, dec: Decomposition) -> None:
    """Whole-run checks: coverage, weight accounting and the path-count bounds."""
    live = g.live_edge_ids()
    used = [e for p in dec.paths for e in p.edge_ids]
    if len(used) != len(live) or sorted(used) != live:
        raise InvariantViolation("paths do not partition the live edges")
    budget = harmonic_budget(g)
    total = sum(dec.weights_audit, Fraction(0))
    if total != budget:
        raise InvariantViolation(f"weight accounting {total} differs from harmonic budget {budget}")
    if not _is_simple(g):
        # parallel edges void the per-path guarantee; accounting above still holds
        return
    light = next((t for t, x in enumerate(dec.weights_audit) if x < 1), None)
    if light is not None:
        raise InvariantViolation(f"round {light}: path weight {dec.weights_audit[light]} < 1")
    if dec.T > budget:
        raise InvariantViolation(f"{dec.T} paths exceed harmonic budget {budget}")
    if g.n and dec.original_m >= g.n:
        d = Fraction(dec.original_m, g.n)
        if not budget_within_bound(budget, g.n, d):
            raise InvariantViolation(f"harmonic budget {budget} above n(ln d + 1)")
    if dec.T and max(map(len, dec.paths)) < -(-dec.original_m // dec.T):
        raise InvariantViolation("longest path shorter than ceil(m/T)")


def longest_path(dec: Decomposition) -> DirPath:
    if not dec.paths:
        raise EmptyDecomposition("decomposition has no paths")
    return max(dec.paths, key=len)


def stats(g: MultiDigraph, dec: Decomposition) -> GraphStats:
    n, m = dec.original_n, dec.original_m
    return GraphStats(
        n=n,
        m=m,
        d=Fraction(m, n) if n else Fraction(0),
        T=dec.T,
        longest=max(map(len, dec.paths), default=0),
        harmonic_budget=harmonic_budget(g),
    )
