"""Command-line front end: parse attributed mixed graphs and stream results.

Graph files are line-based::

    # comment
    v <id> [item,item,...]   vertex with optional positive-integer items
    e <u> <v>                undirected edge
    a <u> <v>                arc from u to v

Vertices must be declared before edges use them.  Solutions are printed one
per line as the sorted vertex ids, a tab, and the sorted common items (``-``
when empty); components print only the ids.  Components of edge-ground modes
print 1-based edge numbers in declaration order.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import asdict, dataclass

from . import sampling
from .brute import brute_mu, brute_mode_membership, brute_solutions
from .core import Instance, SizeThreshold
from .enumeration import FamilyTreeCursor, enumerate_components, enumerate_solutions
from .flow import Edge, MixedGraph
from .systems import (
    MODE_KINDS,
    CoreBudgetError,
    ModeGuardError,
    SystemMode,
    build_oracle,
    spanning_volume,
)


class GraphParseError(ValueError):
    def __init__(self, line_no: int | None, message: str):
        super().__init__(f"line {line_no}: {message}" if line_no else message)
        self.line_no = line_no


class UsageError(ValueError):
    pass


@dataclass
class ParsedGraph:
    graph: MixedGraph
    vertex_ids: list[int]
    items: list[list[int]]
    q: int


def parse_graph_text(text: str) -> ParsedGraph:
    ids: list[int] = []
    index: dict[int, int] = {}
    items: list[list[int]] = []
    edges: list[Edge] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "v":
            if len(parts) not in (2, 3):
                raise GraphParseError(line_no, "vertex lines are 'v <id> [item,item,...]'")
            try:
                vid = int(parts[1])
            except ValueError:
                raise GraphParseError(line_no, f"bad vertex id {parts[1]!r}") from None
            if vid in index:
                raise GraphParseError(line_no, f"vertex {vid} declared twice")
            index[vid] = len(ids)
            ids.append(vid)
            vertex_items: list[int] = []
            if len(parts) == 3:
                for token in parts[2].split(","):
                    try:
                        item = int(token)
                    except ValueError:
                        raise GraphParseError(line_no, f"bad item {token!r}") from None
                    if item < 1:
                        raise GraphParseError(line_no, "items must be positive integers")
                    vertex_items.append(item)
            items.append(sorted(set(vertex_items)))
        elif tag in ("e", "a"):
            if len(parts) != 3:
                raise GraphParseError(line_no, f"edge lines are '{tag} <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphParseError(line_no, "bad edge endpoint") from None
            for endpoint in (u, v):
                if endpoint not in index:
                    raise GraphParseError(line_no, f"vertex {endpoint} used before declaration")
            if u == v:
                raise GraphParseError(line_no, "self-loops are not allowed")
            edges.append(Edge(len(edges), index[u], index[v], directed=(tag == "a")))
        else:
            raise GraphParseError(line_no, f"unknown line tag {tag!r}")
    if not ids:
        raise GraphParseError(None, "file declares no vertices")
    q = max((i for vertex_items in items for i in vertex_items), default=0)
    return ParsedGraph(MixedGraph(len(ids), edges), ids, items, q)


def load_graph(path: str) -> ParsedGraph:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise GraphParseError(None, f"cannot read {path}: {exc.strerror}") from None
    return parse_graph_text(text)


@dataclass
class RunReport:
    solutions: int
    l1_calls: int
    l2_calls: int
    descendants_calls: int
    max_descendants_gap: int
    oracle_gap_max: int
    oracle_gap_mean: float
    wall_time_s: float

    @classmethod
    def from_cursor(cls, cursor: FamilyTreeCursor, wall_time_s: float) -> "RunReport":
        return cls(
            solutions=cursor.outputs,
            l1_calls=cursor.l1_calls,
            l2_calls=cursor.l2_calls,
            descendants_calls=cursor.descendants_calls,
            max_descendants_gap=cursor.max_descendants_gap,
            oracle_gap_max=cursor.oracle_gap_max,
            oracle_gap_mean=cursor.oracle_gap_mean,
            wall_time_s=wall_time_s,
        )


def _make_mode(args: argparse.Namespace) -> SystemMode:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    budget = args.max_core_budget if args.max_core_budget is not None else 10**6
    if budget < 1:
        raise UsageError("--max-core-budget must be positive")
    return SystemMode(
        args.mode,
        args.k,
        core_budget=budget,
        unguarded=args.max_core_budget is not None,
    )


def _emit_stats(cursor: FamilyTreeCursor, wall: float, stream) -> None:
    print(json.dumps(asdict(RunReport.from_cursor(cursor, wall))), file=stream)


def _run_connectors(args: argparse.Namespace, stdout, stderr) -> int:
    parsed = load_graph(args.file)
    mode = _make_mode(args)
    if mode.ground != "vertex":
        raise UsageError("connectors need a vertex-ground mode")
    if parsed.q < 1:
        raise GraphParseError(None, "connectors need at least one item on some vertex")
    if args.min_size is not None and args.min_size < 1:
        raise UsageError("--min-size must be at least 1")
    oracle, _ = build_oracle(parsed.graph, mode)
    inst = Instance.of_items(parsed.items, parsed.q, oracle)
    volume = SizeThreshold(args.min_size - 1) if args.min_size else None
    cursor = FamilyTreeCursor(inst)
    started = time.perf_counter()
    for rec in enumerate_solutions(inst, volume, cursor):
        ids = sorted(parsed.vertex_ids[v] for v in rec.elements)
        common = rec.items.as_tuple()
        tail = ",".join(map(str, common)) if common else "-"
        print(",".join(map(str, ids)) + "\t" + tail, file=stdout, flush=True)
    if args.stats:
        _emit_stats(cursor, time.perf_counter() - started, stderr)
    return 0


def _run_components(args: argparse.Namespace, stdout, stderr) -> int:
    parsed = load_graph(args.file)
    mode = _make_mode(args)
    if args.spanning and mode.ground != "edge":
        raise UsageError("--spanning applies only to edge-ground modes")
    oracle, ground_size = build_oracle(parsed.graph, mode)
    volume = spanning_volume(parsed.graph) if args.spanning else None
    cursor = FamilyTreeCursor()
    started = time.perf_counter()
    for elements in enumerate_components(oracle, ground_size, volume, cursor):
        if mode.ground == "vertex":
            ids = sorted(parsed.vertex_ids[v] for v in elements)
        else:
            ids = sorted(e + 1 for e in elements)
        print(",".join(map(str, ids)), file=stdout, flush=True)
    if args.stats:
        _emit_stats(cursor, time.perf_counter() - started, stderr)
    return 0


def _run_selftest(args: argparse.Namespace, stdout, stderr) -> int:
    if args.file:
        load_graph(args.file)
    mode = _make_mode(args)
    rng = random.Random(args.seed)
    failures = 0

    enum_trials = 0
    for _ in range(args.trials):
        if mode.kind == "connected":
            graph = sampling.random_mixed_graph(rng, n_max=8, m_max=14)
            q_max = 5
        elif mode.ground == "edge":
            graph = sampling.random_mixed_graph(rng, n_max=5, m_max=7)
            q_max = 3
            if graph.m == 0:
                continue
        else:
            graph = sampling.random_mixed_graph(rng, n_max=6, m_max=9)
            q_max = 3
        oracle, ground_size = build_oracle(graph, mode)
        if ground_size == 0:
            continue
        inst = sampling.random_instance(rng, oracle, ground_size, q_max=q_max)
        member = brute_mode_membership(graph, mode)
        got = {rec.elements.mask for rec in enumerate_solutions(inst)}
        want = {rec.elements.mask for rec in brute_solutions(inst, member)}
        enum_trials += 1
        if got != want:
            failures += 1
            print(f"selftest: enumeration mismatch (mode={mode.kind}, k={mode.k})", file=stderr)

    flow_trials = 0
    for _ in range(args.trials):
        graph = sampling.random_mixed_graph(rng, n_max=5, m_max=8, arc_prob=0.3)
        system = sampling.random_monotone_system(rng, graph)
        X, _ = sampling.random_subset_pair(rng, graph)
        s = rng.randrange(graph.n)
        t = rng.randrange(graph.n)
        if s == t:
            continue
        flow_trials += 1
        if system.min_cut_value(s, t, X) != brute_mu(system, s, t, X):
            failures += 1
            print("selftest: min-cut mismatch against cut enumeration", file=stderr)

    print(
        f"selftest: {enum_trials} enumeration trials, {flow_trials} flow trials, "
        f"{failures} failures",
        file=stdout,
    )
    return 1 if failures else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="connenum",
        description="Enumerate connectors and connectivity-constrained subgraph families with polynomial delay.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=MODE_KINDS, default="connected")
        p.add_argument("--k", type=int, default=0, help="connectivity threshold")
        p.add_argument("--stats", action="store_true", help="print a run report to stderr")
        p.add_argument(
            "--max-core-budget",
            type=int,
            default=None,
            help="cap on seed cores per oracle call; also lifts the default k guard",
        )

    connectors = sub.add_parser("connectors", help="enumerate maximal-common-item solutions")
    common(connectors)
    connectors.add_argument("--min-size", type=int, default=None)
    connectors.add_argument("file")

    components = sub.add_parser("components", help="enumerate all components of the system")
    common(components)
    components.add_argument("--spanning", action="store_true")
    components.add_argument("file")

    selftest = sub.add_parser("selftest", help="randomized equivalence suites")
    common(selftest)
    selftest.add_argument("--seed", type=int, default=1)
    selftest.add_argument("--trials", type=int, default=20)
    selftest.add_argument("file", nargs="?")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "connectors":
            return _run_connectors(args, sys.stdout, sys.stderr)
        if args.command == "components":
            return _run_components(args, sys.stdout, sys.stderr)
        return _run_selftest(args, sys.stdout, sys.stderr)
    except (GraphParseError, UsageError, ModeGuardError) as exc:
        print(f"connenum: {exc}", file=sys.stderr)
        return 2
    except CoreBudgetError as exc:
        print(f"connenum: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # keep the interpreter's shutdown flush away from the closed pipe
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except Exception as exc:  # pragma: no cover - defensive
        print(f"connenum: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
