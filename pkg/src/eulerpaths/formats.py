"""Plain-text formats.

Edge list: first line ``n m``, then exactly ``m`` lines ``u v``; lines
starting with ``#`` are comments. Edge ids follow file order.

Paths: one path per line as space-separated vertex ids, every line
LF-terminated, in removal order.
"""

from __future__ import annotations

from pathlib import Path

from .digraph import MultiDigraph
from .errors import GraphError, ParseError


def _ints(line: str, lineno: int, expect: int | None = None) -> list[int]:
    try:
        vals = [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {line!r}") from None
    if expect is not None and len(vals) != expect:
        raise ParseError(f"line {lineno}: expected {expect} integers, got {len(vals)}")
    if any(x < 0 for x in vals):
        raise ParseError(f"line {lineno}: negative value")
    return vals


def parse_edge_list(text: str) -> MultiDigraph:
    rows = [(i, ln) for i, ln in enumerate(text.split("\n"), 1) if not ln.startswith("#")]
    if rows and rows[-1][1] == "":
        rows.pop()
    if not rows:
        raise ParseError("missing 'n m' header")
    lineno, header = rows[0]
    n, m = _ints(header, lineno, 2)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)} edge lines")
    g = MultiDigraph(n)
    for lineno, line in body:
        u, v = _ints(line, lineno, 2)
        try:
            g.add_edge(u, v)
        except GraphError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return g


def format_edge_list(g: MultiDigraph) -> str:
    edges = g.live_edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_paths(text: str) -> list[list[int]]:
    if text and not text.endswith("\n"):
        raise ParseError("paths file is truncated (last line not LF-terminated)")
    paths = []
    for lineno, line in enumerate(text.splitlines(), 1):
        verts = _ints(line, lineno)
        if len(verts) < 2:
            raise ParseError(f"line {lineno}: a path needs at least two vertices")
        paths.append(verts)
    return paths


def read_edge_list(path: str | Path) -> MultiDigraph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: MultiDigraph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g), newline="\n")


def read_paths(path: str | Path) -> list[list[int]]:
    return parse_paths(Path(path).read_text())
