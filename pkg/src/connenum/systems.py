"""Concrete set-system oracles over mixed graphs.

Three oracle families are provided: plain connectivity of induced subgraphs,
pairwise connectivity measured in the whole graph (answered through an
auxiliary graph of sufficiently-connected vertex pairs), and connectivity of
the subgraph spanned by the chosen vertices or edges (answered by weak-vertex
peeling seeded from small "core" sets).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Callable

from .core import ElementSet, iter_bits
from .flow import (
    Coefficients,
    GraphSubset,
    MetaWeightSystem,
    MixedGraph,
    vertex_support,
)

MODE_KINDS = (
    "connected",
    "global-k-edge",
    "global-k-vertex",
    "induced-k-edge",
    "induced-k-vertex",
    "edge-induced-k-edge",
    "edge-induced-k-vertex",
)


class ModeGuardError(ValueError):
    """A k-vertex mode was requested above the guarded threshold."""


class CoreBudgetError(RuntimeError):
    """The number of seed cores for one oracle call exceeds the budget."""


@dataclass(frozen=True)
class SystemMode:
    kind: str
    k: int = 0
    core_budget: int = 10**6
    max_guarded_k: int = 3
    unguarded: bool = False

    def __post_init__(self):
        if self.kind not in MODE_KINDS:
            raise ValueError(f"unknown mode {self.kind!r}")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.kind.endswith("k-vertex") and self.k > self.max_guarded_k and not self.unguarded:
            raise ModeGuardError(
                f"k={self.k} exceeds the default guard of {self.max_guarded_k} "
                "for vertex-connectivity modes; raise the guard explicitly"
            )

    @property
    def ground(self) -> str:
        return "edge" if self.kind.startswith("edge-induced") else "vertex"


# -- weight-system constructions ---------------------------------------------


def global_weight_system(graph: MixedGraph, k: int, variant: str) -> MetaWeightSystem:
    """Weights under which pair cut values match whole-graph connectivity."""
    _check_variant(variant)
    wv = k if variant == "edge" else 1
    return MetaWeightSystem(
        graph, wv, 1, Coefficients.uniform(1, 1, 1), k,
        GraphSubset(graph.full_vertex_mask(), 0),
    )


def induced_weight_system(graph: MixedGraph, k: int, variant: str) -> MetaWeightSystem:
    """Weights under which pair cut values match connectivity of the induced
    subgraph: elements outside the chosen vertices cost nothing."""
    _check_variant(variant)
    wv = k if variant == "edge" else 1
    return MetaWeightSystem(
        graph, wv, 1, Coefficients.uniform(1, 0, 0), k,
        GraphSubset(graph.full_vertex_mask(), 0),
    )


def edge_induced_system(graph: MixedGraph, k: int, variant: str) -> MetaWeightSystem:
    """Edge-ground system whose components are edge sets spanning a
    k-edge-connected (variant "edge") or k-vertex-connected subgraph."""
    _check_variant(variant)
    wv = k if variant == "edge" else 1
    return MetaWeightSystem(
        graph, wv, 1, Coefficients.uniform(0, 0, 0), k,
        GraphSubset(0, graph.full_edge_mask()),
    )


def _check_variant(variant: str) -> None:
    if variant not in ("edge", "vertex"):
        raise ValueError("variant must be 'edge' or 'vertex'")


def _lift(system: MetaWeightSystem, s: ElementSet) -> GraphSubset:
    """Interpret a ground ElementSet in the system's element universe."""
    g = system.ground
    if g.edges == 0:
        if s.n != system.graph.n:
            raise ValueError("set capacity differs from the vertex count")
        if s.mask & ~g.vertices:
            raise ValueError("set has members outside the ground set")
        return GraphSubset(s.mask, 0)
    if g.vertices == 0:
        if s.n != system.graph.m:
            raise ValueError("set capacity differs from the edge count")
        if s.mask & ~g.edges:
            raise ValueError("set has members outside the ground set")
        return GraphSubset(0, s.mask)
    raise ValueError("mixed ground sets are not supported here")


def _lower(system: MetaWeightSystem, X: GraphSubset, capacity: int) -> ElementSet:
    if system.ground.edges == 0:
        return ElementSet(capacity, X.vertices)
    return ElementSet(capacity, X.edges)


# -- peeling and cores ---------------------------------------------------------


def maximal_in(system: MetaWeightSystem, X: ElementSet, Y: ElementSet) -> ElementSet:
    """The unique maximal component of Y containing X, or an empty set.

    Repeatedly removes every element incident to a vertex that some vertex of
    X cannot reach with cut value k; once stable, X's own vertices must still
    be mutually k-connected in what remains, otherwise nothing qualifies.
    """
    if not X:
        raise ValueError("seed must be non-empty")
    if not X <= Y:
        raise ValueError("seed must lie inside the search set")
    gx = _lift(system, X)
    gy = _lift(system, Y)
    if system._support_weight_scaled(gx) < system.k_scaled:
        raise ValueError("seed weight is below the connectivity threshold")
    graph = system.graph
    x_sup = vertex_support(graph, gx)
    both_ways = graph.has_arcs  # cut values are directional once arcs exist
    yv, ye = gy.vertices, gy.edges
    while True:
        cur = GraphSubset(yv, ye)
        weak = 0
        for t in iter_bits(vertex_support(graph, cur) & ~x_sup):
            if system.exists_weak_vertex(gx, t, cur) or (
                both_ways and system.exists_weak_vertex(gx, t, cur, reverse=True)
            ):
                weak |= 1 << t
        if not weak:
            break
        yv &= ~weak
        drop = 0
        for e in iter_bits(ye & ~gx.edges):
            if graph.endpoint_mask[e] & weak:
                drop |= 1 << e
        ye &= ~drop
    final = GraphSubset(yv, ye)
    verts = list(iter_bits(x_sup))
    ordered = graph.has_arcs
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if not system.cut_at_least(u, v, final):
                return ElementSet(X.n)
            if ordered and not system.cut_at_least(v, u, final):
                return ElementSet(X.n)
    return _lower(system, final, X.n)


def k_cores(mode: SystemMode, Y: ElementSet) -> list[ElementSet]:
    """Seed sets from which every maximal component of Y can be grown."""
    if not Y:
        raise ValueError("Y must be non-empty")
    singletons = [ElementSet(Y.n, 1 << v) for v in Y]
    if mode.k == 0 or mode.kind in ("induced-k-edge", "edge-induced-k-edge"):
        return singletons
    if mode.kind in ("induced-k-vertex", "edge-induced-k-vertex"):
        total = comb(len(Y), mode.k)
        if total > mode.core_budget:
            raise CoreBudgetError(
                f"{total} seed cores exceed the budget of {mode.core_budget}"
            )
        members = Y.as_tuple()
        return [ElementSet.of(Y.n, combo) for combo in combinations(members, mode.k)]
    raise ValueError(f"mode {mode.kind!r} does not use seed cores")


def core_l2(system: MetaWeightSystem, mode: SystemMode, Y: ElementSet) -> list[ElementSet]:
    """All maximal components of Y: grow each heavy-enough core, then dedup."""
    if not Y:
        raise ValueError("Y must be non-empty")
    found: dict[int, ElementSet] = {}
    for core in k_cores(mode, Y):
        if system._support_weight_scaled(_lift(system, core)) < system.k_scaled:
            continue
        grown = maximal_in(system, core, Y)
        if grown:
            found[grown.mask] = grown
    return sorted(found.values(), key=ElementSet.as_tuple)


# -- oracles -------------------------------------------------------------------


class ConnectedOracle:
    """L1/L2 for vertex sets that induce connected subgraphs.

    Edge direction is ignored; a single vertex counts as connected.
    """

    def __init__(self, graph: MixedGraph):
        self.n = graph.n
        self._adj = graph.underlying_adjacency()

    def _flood(self, ymask: int, seed: int) -> int:
        comp = 0
        frontier = 1 << seed
        while frontier:
            comp |= frontier
            grown = 0
            for v in iter_bits(frontier):
                grown |= self._adj[v]
            frontier = grown & ymask & ~comp
        return comp

    def l1(self, X: ElementSet, Y: ElementSet) -> ElementSet:
        _check_l1_args(X, Y, self.n)
        comp = self._flood(Y.mask, X.min_element())
        if X.mask & ~comp:
            return ElementSet(self.n)
        return ElementSet(self.n, comp)

    def l2(self, Y: ElementSet) -> list[ElementSet]:
        _check_l2_args(Y, self.n)
        out = []
        remaining = Y.mask
        while remaining:
            comp = self._flood(Y.mask, (remaining & -remaining).bit_length() - 1)
            out.append(ElementSet(self.n, comp))
            remaining &= ~comp
        return out

    def delta_hint(self, Y: ElementSet) -> int:
        return len(Y)


@dataclass(frozen=True)
class AuxiliaryGraph:
    """Simple undirected graph of vertex pairs connected both ways at level k."""

    n: int
    adj: tuple[int, ...]

    def is_clique(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if mask & ~(self.adj[v] | (1 << v)):
                return False
        return True


class GlobalConnectivityOracle:
    """L1/L2 for vertex sets pairwise k-connected in the whole graph.

    For the edge variant the auxiliary graph's adjacency is transitive, so
    its connected components partition the vertices and answer both oracles
    directly.  For the vertex variant components are the auxiliary graph's
    cliques with at least k vertices; the one containing a given clique is
    unique and grown greedily.
    """

    def __init__(self, graph: MixedGraph, k: int, variant: str, core_budget: int = 10**6):
        _check_variant(variant)
        self.graph = graph
        self.n = graph.n
        self.k = k
        self.variant = variant
        self.core_budget = core_budget
        self.system = global_weight_system(graph, k, variant)
        full = GraphSubset(graph.full_vertex_mask(), 0)
        adj = [0] * self.n
        if k == 0:
            for v in range(self.n):
                adj[v] = full.vertices & ~(1 << v)
        else:
            for u in range(self.n):
                for v in range(u + 1, self.n):
                    fwd = self.system.cut_at_least(u, v, full)
                    bwd = fwd
                    if graph.has_arcs:
                        bwd = self.system.cut_at_least(v, u, full)
                    if fwd and bwd:
                        adj[u] |= 1 << v
                        adj[v] |= 1 << u
        self.aux = AuxiliaryGraph(self.n, tuple(adj))
        self._class_mask: tuple[int, ...] | None = None
        if variant == "edge":
            classes = [0] * self.n
            remaining = (1 << self.n) - 1
            while remaining:
                seed = (remaining & -remaining).bit_length() - 1
                cls = (1 << seed) | self.aux.adj[seed]
                for v in iter_bits(cls):
                    classes[v] = cls
                remaining &= ~cls
            self._class_mask = tuple(classes)

    def _grow_clique(self, start: int, ymask: int) -> int:
        clique = start
        common = ymask
        for v in iter_bits(start):
            common &= self.aux.adj[v]
        cand = common & ~clique
        while cand:
            v = (cand & -cand).bit_length() - 1
            clique |= 1 << v
            common &= self.aux.adj[v]
            cand = common & ~clique
        return clique

    def l1(self, X: ElementSet, Y: ElementSet) -> ElementSet:
        _check_l1_args(X, Y, self.n)
        if self.k == 0:
            return Y
        if self.variant == "edge":
            cls = self._class_mask[X.min_element()] & Y.mask
            if X.mask & ~cls:
                return ElementSet(self.n)
            return ElementSet(self.n, cls)
        if len(X) < self.k:
            raise ValueError(
                "vertex-variant queries need a seed of at least k vertices"
            )
        if not self.aux.is_clique(X.mask):
            return ElementSet(self.n)
        return ElementSet(self.n, self._grow_clique(X.mask, Y.mask))

    def l2(self, Y: ElementSet) -> list[ElementSet]:
        _check_l2_args(Y, self.n)
        if self.k == 0:
            return [Y]
        if self.variant == "edge":
            out = []
            remaining = Y.mask
            while remaining:
                seed = (remaining & -remaining).bit_length() - 1
                cls = self._class_mask[seed] & Y.mask
                out.append(ElementSet(self.n, cls))
                remaining &= ~cls
            return out
        total = comb(len(Y), self.k)
        if total > self.core_budget:
            raise CoreBudgetError(
                f"{total} seed cliques exceed the budget of {self.core_budget}"
            )
        found: dict[int, ElementSet] = {}
        members = Y.as_tuple()
        for combo in combinations(members, self.k):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if not self.aux.is_clique(mask):
                continue
            grown = self._grow_clique(mask, Y.mask)
            found[grown] = ElementSet(self.n, grown)
        return sorted(found.values(), key=ElementSet.as_tuple)

    def delta_hint(self, Y: ElementSet) -> int:
        if self.variant == "edge" or self.k == 0:
            return len(Y)
        return comb(len(Y), self.k)


class MetaWeightOracle:
    """L1 via weak-vertex peeling, L2 via seed cores, over a weight system."""

    def __init__(self, system: MetaWeightSystem, mode: SystemMode):
        self.system = system
        self.mode = mode
        self.ground_size = system.graph.n if mode.ground == "vertex" else system.graph.m

    def l1(self, X: ElementSet, Y: ElementSet) -> ElementSet:
        _check_l1_args(X, Y, self.ground_size)
        return maximal_in(self.system, X, Y)

    def l2(self, Y: ElementSet) -> list[ElementSet]:
        _check_l2_args(Y, self.ground_size)
        return core_l2(self.system, self.mode, Y)

    def delta_hint(self, Y: ElementSet) -> int:
        if self.mode.k == 0 or self.mode.kind.endswith("k-edge"):
            return len(Y)
        return comb(len(Y), self.mode.k)


def _check_l1_args(X: ElementSet, Y: ElementSet, n: int) -> None:
    if X.n != n or Y.n != n:
        raise ValueError("set capacity differs from the oracle's ground size")
    if not X:
        raise ValueError("X must be non-empty")
    if not X <= Y:
        raise ValueError("X must be contained in Y")


def _check_l2_args(Y: ElementSet, n: int) -> None:
    if Y.n != n:
        raise ValueError("set capacity differs from the oracle's ground size")
    if not Y:
        raise ValueError("Y must be non-empty")


# -- volumes and mode plumbing --------------------------------------------------


@dataclass(frozen=True)
class SpanningVolume:
    """Positive exactly on edge sets whose endpoints cover every vertex."""

    graph: MixedGraph

    def eval_positive(self, X: ElementSet) -> bool:
        return self.graph.support_of(X.mask) == self.graph.full_vertex_mask()


def spanning_volume(graph: MixedGraph) -> SpanningVolume:
    return SpanningVolume(graph)


def build_oracle(graph: MixedGraph, mode: SystemMode):
    """Oracle plus ground-set size for a mode on a graph."""
    kind = mode.kind
    if kind == "connected":
        return ConnectedOracle(graph), graph.n
    if kind == "global-k-edge":
        return GlobalConnectivityOracle(graph, mode.k, "edge", mode.core_budget), graph.n
    if kind == "global-k-vertex":
        return GlobalConnectivityOracle(graph, mode.k, "vertex", mode.core_budget), graph.n
    if kind == "induced-k-edge":
        return MetaWeightOracle(induced_weight_system(graph, mode.k, "edge"), mode), graph.n
    if kind == "induced-k-vertex":
        return MetaWeightOracle(induced_weight_system(graph, mode.k, "vertex"), mode), graph.n
    if graph.m == 0:
        raise ValueError("edge-ground modes need a graph with at least one edge")
    if kind == "edge-induced-k-edge":
        return MetaWeightOracle(edge_induced_system(graph, mode.k, "edge"), mode), graph.m
    return MetaWeightOracle(edge_induced_system(graph, mode.k, "vertex"), mode), graph.m


def mode_membership(graph: MixedGraph, mode: SystemMode) -> Callable[[ElementSet], bool]:
    """Membership predicate for a mode, evaluated through cut values."""
    if mode.kind == "connected":
        adj = graph.underlying_adjacency()

        def member(X: ElementSet) -> bool:
            if not X:
                return False
            comp = 0
            frontier = 1 << X.min_element()
            while frontier:
                comp |= frontier
                grown = 0
                for v in iter_bits(frontier):
                    grown |= adj[v]
                frontier = grown & X.mask & ~comp
            return comp == X.mask

        return member

    if mode.kind.startswith("global"):
        system = global_weight_system(graph, mode.k, mode.kind.rsplit("-", 1)[1])
    elif mode.kind.startswith("induced"):
        system = induced_weight_system(graph, mode.k, mode.kind.rsplit("-", 1)[1])
    else:
        system = edge_induced_system(graph, mode.k, mode.kind.rsplit("-", 1)[1])

    def member(X: ElementSet) -> bool:
        if not X:
            return False
        return system.is_component(_lift(system, X))

    return member
