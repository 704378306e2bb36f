"""Command-line front end.

Exit codes: 0 ok, 1 verification or invariant failure, 2 parse or usage
error, 3 graph neither Eulerian nor single-defect, 4 input too large for
the exhaustive oracle.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import gen
from .decompose import (
    CSV_HEADER,
    decompose_paths,
    longest_path,
    stats,
    theorem1_bound,
)
from .errors import (
    DomainError,
    InvalidGraph,
    InvariantViolation,
    ParseError,
    TooLarge,
)
from .formats import format_edge_list, read_edge_list, read_paths
from .lemma_path import STOP_RULES
from .oracle import (
    LONGEST_PATH_MAX_EDGES,
    MIN_DECOMPOSITION_MAX_EDGES,
    brute_longest_path,
    brute_min_path_decomposition,
    validate_vertex_paths,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_TOO_LARGE = 4

FAMILIES = ("cycle", "tournament", "random-eulerian", "bipartite")


class CliError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        return read_edge_list(path)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc.strerror}") from None
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, newline="\n")


def _decompose(path: str, rule: str, engine: str):
    g = _load(path)
    try:
        dec = decompose_paths(g, rule=rule, engine=engine)
    except InvalidGraph as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None
    except InvariantViolation as exc:
        raise CliError(EXIT_VERIFY, f"{path}: invariant failed: {exc}") from None
    return g, dec


def cmd_gen(args: argparse.Namespace) -> int:
    need = {
        "cycle": ("n",),
        "tournament": ("k",),
        "random-eulerian": ("n", "t", "seed"),
        "bipartite": ("a", "b"),
    }[args.family]
    missing = [f"--{p}" for p in need if getattr(args, p) is None]
    if missing:
        raise CliError(EXIT_PARSE, f"family {args.family} needs {' '.join(missing)}")
    try:
        if args.family == "cycle":
            g = gen.directed_cycle(args.n)
        elif args.family == "tournament":
            g = gen.rotational_tournament(args.k)
        elif args.family == "random-eulerian":
            g = gen.random_eulerian(args.n, args.t, args.seed)
        else:
            g = gen.oriented_complete_bipartite(args.a, args.b)
    except (DomainError, ValueError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    _write(format_edge_list(g), args.output)
    return EXIT_OK


def _decompose_job(path: str, rule: str, engine: str) -> tuple[int, str, str, str]:
    """Worker body: (exit code, message, serialized paths, stats row)."""
    try:
        g, dec = _decompose(path, rule, engine)
    except CliError as exc:
        return exc.code, str(exc), "", ""
    return EXIT_OK, "", dec.serialize(), stats(g, dec).csv_row()


def _append_stats(path: str, rows: list[str]) -> None:
    p = Path(path)
    fresh = not p.exists() or p.stat().st_size == 0
    with p.open("a", newline="\n") as fh:
        if fresh:
            fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")


def cmd_decompose(args: argparse.Namespace) -> int:
    inputs = args.input
    if len(inputs) > 1 and args.out_dir is None:
        raise CliError(EXIT_PARSE, "several inputs need --out-dir")
    if args.jobs > 1 and len(inputs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_decompose_job, inputs,
                                    [args.rule] * len(inputs), [args.engine] * len(inputs)))
    else:
        results = [_decompose_job(p, args.rule, args.engine) for p in inputs]

    code = EXIT_OK
    rows = []
    for path, (rc, msg, text, row) in zip(inputs, results):
        if rc:
            print(msg, file=sys.stderr)
            code = max(code, rc)
            continue
        if args.out_dir is not None:
            out_dir = Path(args.out_dir)
            out_dir.mkdir(parents=True, exist_ok=True)
            _write(text, str(out_dir / (Path(path).stem + ".paths")))
        else:
            _write(text, args.output)
        rows.append(row)
    if args.stats and rows:
        _append_stats(args.stats, rows)
    return code


def cmd_longest_path(args: argparse.Namespace) -> int:
    g, dec = _decompose(args.input, args.rule, args.engine)
    if not dec.paths:
        print("length=0")
        return EXIT_OK
    p = longest_path(dec)
    print(" ".join(map(str, p.vertices)))
    print(f"length={len(p)}")
    if args.check_bound and g.n:
        d = Fraction(dec.original_m, g.n)
        if d >= 1 and len(p) < theorem1_bound(d):
            print(f"length {len(p)} below d/(ln d + 1) = {theorem1_bound(d):.6f}",
                  file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g = _load(args.input)
    try:
        vertex_paths = read_paths(args.paths)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"{args.paths}: {exc.strerror}") from None
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"{args.paths}: {exc}") from None
    problem = validate_vertex_paths(g, vertex_paths)
    if problem:
        print(problem)
        return EXIT_VERIFY
    print("ok")
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    g = _load(args.input)
    try:
        longest = brute_longest_path(g)
    except TooLarge as exc:
        raise CliError(EXIT_TOO_LARGE, str(exc)) from None
    line = f"longest={longest}"
    if g.m_live <= MIN_DECOMPOSITION_MAX_EDGES:
        line += f" min_paths={brute_min_path_decomposition(g)}"
    print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulerpaths",
        description="Path decompositions and long paths in Eulerian digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    def search_options(q: argparse.ArgumentParser) -> None:
        q.add_argument("--rule", choices=STOP_RULES, default="last",
                       help="where the backwards search stops (default: last visited vertex)")
        q.add_argument("--engine", choices=("auto", "python", "compiled"), default="auto")

    p = sub.add_parser("decompose", help="decompose into edge-disjoint paths")
    p.add_argument("-i", "--input", nargs="+", required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--out-dir")
    p.add_argument("--stats", metavar="CSV", help="append a stats row to this CSV file")
    p.add_argument("--jobs", type=int, default=1)
    search_options(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("longest-path", help="print the longest path of the decomposition")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--check-bound", action="store_true",
                   help="exit 1 if the path is shorter than d/(ln d + 1)")
    search_options(p)
    p.set_defaults(func=cmd_longest_path)

    p = sub.add_parser("verify", help="check a paths file against a graph")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-p", "--paths", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "oracle",
        help=f"exhaustive longest path (<= {LONGEST_PATH_MAX_EDGES} edges) and minimum "
             f"decomposition (<= {MIN_DECOMPOSITION_MAX_EDGES} edges)")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(exc, file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
