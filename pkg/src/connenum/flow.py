"""Mixed graphs, subset-induced weights, and min-cut queries with vertex costs.

A cut between s and t is an ordered pair of disjoint vertex sets (one holding
s, the other t); its value charges every edge crossing from the s-side to the
t-side plus every bypassed vertex.  Weights are exact rationals scaled to
integers once at system build, so cut comparisons never touch floating point.
Min cuts are computed by a blocking-flow max-flow on a node-split network:
every vertex except the two terminals is split into an in/out pair joined by
an arc carrying the vertex weight.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .core import iter_bits


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    directed: bool = False


class MixedGraph:
    """Vertices 0..n-1 with undirected edges and arcs; multi-edges allowed."""

    def __init__(self, n: int, edges: Sequence[Edge]):
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        for pos, e in enumerate(edges):
            if e.id != pos:
                raise ValueError("edge ids must equal their positions")
            if not (0 <= e.u < n and 0 <= e.v < n):
                raise ValueError(f"edge {e.id} has an endpoint outside [0, {n})")
            if e.u == e.v:
                raise ValueError(f"edge {e.id} is a self-loop")
        self.n = n
        self.edges = tuple(edges)
        self.endpoint_mask = tuple((1 << e.u) | (1 << e.v) for e in self.edges)
        self.has_arcs = any(e.directed for e in self.edges)

    @classmethod
    def build(
        cls,
        n: int,
        undirected: Iterable[tuple[int, int]] = (),
        arcs: Iterable[tuple[int, int]] = (),
    ) -> "MixedGraph":
        edges = []
        for u, v in undirected:
            edges.append(Edge(len(edges), u, v, directed=False))
        for u, v in arcs:
            edges.append(Edge(len(edges), u, v, directed=True))
        return cls(n, edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def full_vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def full_edge_mask(self) -> int:
        return (1 << self.m) - 1

    def support_of(self, edge_mask: int) -> int:
        mask = 0
        for e in iter_bits(edge_mask):
            mask |= self.endpoint_mask[e]
        return mask

    def underlying_adjacency(self) -> tuple[int, ...]:
        """Neighbour masks ignoring edge direction."""
        adj = [0] * self.n
        for e in self.edges:
            adj[e.u] |= 1 << e.v
            adj[e.v] |= 1 << e.u
        return tuple(adj)


@dataclass(frozen=True)
class GraphSubset:
    """A subset of the vertices and edges of a mixed graph, as two bit masks."""

    vertices: int = 0
    edges: int = 0

    def __bool__(self) -> bool:
        return bool(self.vertices | self.edges)

    def __or__(self, other: "GraphSubset") -> "GraphSubset":
        return GraphSubset(self.vertices | other.vertices, self.edges | other.edges)

    def __and__(self, other: "GraphSubset") -> "GraphSubset":
        return GraphSubset(self.vertices & other.vertices, self.edges & other.edges)

    def __sub__(self, other: "GraphSubset") -> "GraphSubset":
        return GraphSubset(self.vertices & ~other.vertices, self.edges & ~other.edges)

    def issubset(self, other: "GraphSubset") -> bool:
        return (self.vertices & ~other.vertices | self.edges & ~other.edges) == 0


def vertex_support(graph: MixedGraph, X: GraphSubset) -> int:
    """Vertices of X: its vertex members plus the endpoints of its edges."""
    return X.vertices | graph.support_of(X.edges)


@dataclass(frozen=True)
class Coefficients:
    """Per-edge/per-vertex multipliers applied to weights of non-members.

    ``alpha`` scales edges with both endpoints inside the current support,
    ``cross_und``/``cross_out``/``cross_in`` scale boundary-crossing edges,
    and ``beta_*`` scales elements fully outside.  Each field is a rational
    or a per-id sequence of rationals.
    """

    alpha: object = 1
    cross_und: object = 1
    cross_out: object = 1
    cross_in: object = 1
    beta_edge: object = 1
    beta_vertex: object = 1

    @classmethod
    def uniform(cls, alpha, cross, beta) -> "Coefficients":
        return cls(alpha, cross, cross, cross, beta, beta)


def _check_threshold(threshold: int) -> int:
    if not isinstance(threshold, int) or threshold < 0:
        raise ValueError("threshold must be a non-negative integer")
    return threshold


def _as_fraction(value, what: str) -> Fraction:
    if isinstance(value, float):
        raise TypeError(f"{what} must be an exact rational, not float")
    frac = Fraction(value)
    if frac < 0:
        raise ValueError(f"{what} must be non-negative")
    return frac


def _per_id(value, count: int, what: str) -> list[Fraction]:
    if isinstance(value, (int, Fraction, str)):
        return [_as_fraction(value, what)] * count
    vals = [_as_fraction(v, what) for v in value]
    if len(vals) != count:
        raise ValueError(f"{what} needs {count} values, got {len(vals)}")
    return vals


@dataclass(frozen=True)
class CutCertificate:
    """A witnessing cut: source side, sink side, bypassed vertices, value."""

    source_side: frozenset[int]
    sink_side: frozenset[int]
    bypassed: frozenset[int]
    value: Fraction


class _SplitNetwork:
    """Static node-split topology; capacities are filled per query.

    Node 2v is the entry of vertex v, 2v+1 its exit; node 2n is a spare
    super-source, node 2n+1 a spare super-sink.  Arcs are stored as
    (forward, reverse) pairs so arc i's reverse is i^1.
    """

    __slots__ = (
        "size",
        "sstar",
        "tstar",
        "to",
        "adj",
        "internal",
        "edge_arcs",
        "source_arcs",
        "sink_arcs",
        "arc_count",
    )

    def __init__(self, graph: MixedGraph):
        n = graph.n
        self.size = 2 * n + 2
        self.sstar = 2 * n
        self.tstar = 2 * n + 1
        self.to: list[int] = []
        self.adj: list[list[int]] = [[] for _ in range(self.size)]

        def add(a: int, b: int) -> int:
            i = len(self.to)
            self.to.append(b)
            self.adj[a].append(i)
            self.to.append(a)
            self.adj[b].append(i + 1)
            return i

        self.internal = tuple(add(2 * v, 2 * v + 1) for v in range(n))
        arcs = []
        for e in graph.edges:
            if e.directed:
                arcs.append((add(2 * e.u + 1, 2 * e.v),))
            else:
                arcs.append((add(2 * e.u + 1, 2 * e.v), add(2 * e.v + 1, 2 * e.u)))
        self.edge_arcs = tuple(arcs)
        self.source_arcs = tuple(add(self.sstar, 2 * v) for v in range(n))
        self.sink_arcs = tuple(add(2 * v + 1, self.tstar) for v in range(n))
        self.arc_count = len(self.to)

    def max_flow(self, caps: list[int], s: int, t: int, cutoff: int | None = None) -> int:
        to = self.to
        adj = self.adj
        size = self.size
        total = 0
        while cutoff is None or total < cutoff:
            level = [-1] * size
            level[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for a in adj[u]:
                    if caps[a] > 0:
                        w = to[a]
                        if level[w] < 0:
                            level[w] = level[u] + 1
                            queue.append(w)
            if level[t] < 0:
                break
            it = [0] * size
            while True:
                pushed = self._augment(caps, level, it, s, t)
                if pushed == 0:
                    break
                total += pushed
                if cutoff is not None and total >= cutoff:
                    break
        return total

    def _augment(self, caps: list[int], level: list[int], it: list[int], s: int, t: int) -> int:
        to = self.to
        adj = self.adj
        path: list[int] = []
        u = s
        while True:
            if u == t:
                bottleneck = min(caps[a] for a in path)
                for a in path:
                    caps[a] -= bottleneck
                    caps[a ^ 1] += bottleneck
                return bottleneck
            found = False
            arcs = adj[u]
            while it[u] < len(arcs):
                a = arcs[it[u]]
                w = to[a]
                if caps[a] > 0 and level[w] == level[u] + 1:
                    path.append(a)
                    u = w
                    found = True
                    break
                it[u] += 1
            if not found:
                level[u] = -1
                if not path:
                    return 0
                a = path.pop()
                u = to[a ^ 1]
                it[u] += 1

    def residual_reachable(self, caps: list[int], s: int) -> list[bool]:
        seen = [False] * self.size
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for a in self.adj[u]:
                if caps[a] > 0 and not seen[self.to[a]]:
                    seen[self.to[a]] = True
                    queue.append(self.to[a])
        return seen


class MetaWeightSystem:
    """A mixed graph with weights, coefficients, a threshold, and a ground set.

    Subsets of the ground set induce a weight on every vertex and edge; the
    coefficient ordering enforced here makes those induced weights grow with
    the subset, which is what the peeling and core machinery relies on.
    """

    def __init__(
        self,
        graph: MixedGraph,
        vertex_weight,
        edge_weight,
        coefficients: Coefficients,
        k: int,
        ground: GraphSubset | None = None,
    ):
        if not isinstance(k, int) or k < 0:
            raise ValueError("threshold k must be a non-negative integer")
        self.graph = graph
        self.k = k
        n, m = graph.n, graph.m
        wv = _per_id(vertex_weight, n, "vertex weight")
        we = _per_id(edge_weight, m, "edge weight")
        alpha = _per_id(coefficients.alpha, m, "alpha")
        cross_und = _per_id(coefficients.cross_und, m, "cross_und")
        cross_out = _per_id(coefficients.cross_out, m, "cross_out")
        cross_in = _per_id(coefficients.cross_in, m, "cross_in")
        beta_e = _per_id(coefficients.beta_edge, m, "beta_edge")
        beta_v = _per_id(coefficients.beta_vertex, n, "beta_vertex")
        for e in graph.edges:
            i = e.id
            if alpha[i] > 1:
                raise ValueError(f"alpha exceeds 1 on edge {i}")
            crossings = [cross_out[i], cross_in[i]] if e.directed else [cross_und[i]]
            for c in crossings:
                if not alpha[i] >= c >= beta_e[i]:
                    raise ValueError(f"coefficients on edge {i} are not monotone")
        for v in range(n):
            if beta_v[v] > 1:
                raise ValueError(f"beta exceeds 1 on vertex {v}")

        products = []
        for v in range(n):
            products += [wv[v], beta_v[v] * wv[v]]
        member, inside, out_und, out_fwd, out_rev, outside = [], [], [], [], [], []
        for e in graph.edges:
            i = e.id
            cases = (
                we[i],
                alpha[i] * we[i],
                cross_und[i] * we[i],
                cross_out[i] * we[i],
                cross_in[i] * we[i],
                beta_e[i] * we[i],
            )
            products += list(cases)
            for bucket, val in zip((member, inside, out_und, out_fwd, out_rev, outside), cases):
                bucket.append(val)
        self.scale = lcm(*(p.denominator for p in products)) if products else 1
        s = self.scale

        def scaled(vals: list[Fraction]) -> tuple[int, ...]:
            out = []
            for v in vals:
                value = v * s
                if value.denominator != 1:
                    raise AssertionError("scaling did not clear a denominator")
                out.append(value.numerator)
            return tuple(out)

        self._v_inside = scaled(wv)
        self._v_outside = scaled([beta_v[v] * wv[v] for v in range(n)])
        self._e_member = scaled(member)
        self._e_inside = scaled(inside)
        self._e_cross_und = scaled(out_und)
        self._e_cross_out = scaled(out_fwd)
        self._e_cross_in = scaled(out_rev)
        self._e_outside = scaled(outside)
        self.k_scaled = k * s
        self.infinity = sum(self._v_inside) + sum(self._e_member) + 1
        self.ground = (
            ground
            if ground is not None
            else GraphSubset(graph.full_vertex_mask(), graph.full_edge_mask())
        )
        if not self.ground.issubset(GraphSubset(graph.full_vertex_mask(), graph.full_edge_mask())):
            raise ValueError("ground set has bits outside the graph")
        self._net = _SplitNetwork(graph)

    # -- induced weights ----------------------------------------------------

    def _edge_weight_scaled(self, X: GraphSubset, e: Edge, vsup: int) -> int:
        i = e.id
        if X.edges >> i & 1:
            return self._e_member[i]
        u_in = vsup >> e.u & 1
        v_in = vsup >> e.v & 1
        if u_in and v_in:
            return self._e_inside[i]
        if not u_in and not v_in:
            return self._e_outside[i]
        if not e.directed:
            return self._e_cross_und[i]
        return self._e_cross_out[i] if u_in else self._e_cross_in[i]

    def _vertex_weight_scaled(self, X: GraphSubset, v: int, vsup: int) -> int:
        return self._v_inside[v] if vsup >> v & 1 else self._v_outside[v]

    def induced_weight(self, X: GraphSubset, a: int | Edge) -> Fraction:
        """Weight of a vertex (int) or edge under the subset X."""
        vsup = vertex_support(self.graph, X)
        if isinstance(a, Edge):
            return Fraction(self._edge_weight_scaled(X, a, vsup), self.scale)
        return Fraction(self._vertex_weight_scaled(X, a, vsup), self.scale)

    def _support_weight_scaled(self, X: GraphSubset) -> int:
        vsup = vertex_support(self.graph, X)
        return sum(self._v_inside[v] for v in iter_bits(vsup))

    def support_weight(self, X: GraphSubset) -> Fraction:
        """Total induced weight of the vertices of X."""
        return Fraction(self._support_weight_scaled(X), self.scale)

    # -- cut queries ---------------------------------------------------------

    def _capacities(self, X: GraphSubset, unsplit: tuple[int, ...]) -> list[int]:
        net = self._net
        caps = [0] * net.arc_count
        vsup = vertex_support(self.graph, X)
        inf = self.infinity
        for v in range(self.graph.n):
            caps[net.internal[v]] = (
                inf if v in unsplit else self._vertex_weight_scaled(X, v, vsup)
            )
        for e in self.graph.edges:
            w = self._edge_weight_scaled(X, e, vsup)
            for arc in net.edge_arcs[e.id]:
                caps[arc] = w
        return caps

    def min_cut_value(
        self, s: int, t: int, X: GraphSubset, *, certificate: bool = False
    ):
        """Minimum induced weight of a cut between s and t, charging crossing
        edges and bypassed vertices.  Optionally also returns a witness."""
        if s == t:
            raise ValueError("cut endpoints must differ")
        n = self.graph.n
        if not (0 <= s < n and 0 <= t < n):
            raise ValueError("cut endpoints outside the graph")
        caps = self._capacities(X, (s, t))
        flow = self._net.max_flow(caps, 2 * s + 1, 2 * t)
        value = Fraction(flow, self.scale)
        if not certificate:
            return value
        reach = self._net.residual_reachable(caps, 2 * s + 1)
        source_side, sink_side, bypassed = set(), set(), set()
        for v in range(n):
            if v == s:
                source_side.add(v)
            elif v == t:
                sink_side.add(v)
            elif reach[2 * v] and reach[2 * v + 1]:
                source_side.add(v)
            elif reach[2 * v]:
                bypassed.add(v)
            else:
                sink_side.add(v)
        cert = CutCertificate(
            frozenset(source_side), frozenset(sink_side), frozenset(bypassed), value
        )
        return value, cert

    def cut_at_least(self, s: int, t: int, X: GraphSubset, threshold: int | None = None) -> bool:
        """Whether every cut between s and t weighs at least the threshold."""
        th = self.k if threshold is None else _check_threshold(threshold)
        th_scaled = th * self.scale
        if th_scaled <= 0:
            return True
        caps = self._capacities(X, (s, t))
        return self._net.max_flow(caps, 2 * s + 1, 2 * t, cutoff=th_scaled) >= th_scaled

    def exists_weak_vertex(
        self, X: GraphSubset, t: int, Y: GraphSubset, k: int | None = None, reverse: bool = False
    ) -> bool:
        """Whether some vertex of X is separated from t below the threshold
        inside Y.  One max flow from a super-source wired to all of X's
        vertices with threshold-capacity arcs answers the question; with
        ``reverse`` the mirrored super-sink test covers t-to-X separation,
        which differs from the forward test only when arcs are present."""
        kk = self.k if k is None else _check_threshold(k)
        k_scaled = kk * self.scale
        if k_scaled <= 0:
            return False
        if __debug__:
            x_sup = vertex_support(self.graph, X)
            y_sup = vertex_support(self.graph, Y)
            assert X.issubset(Y), "X must lie inside Y"
            assert y_sup >> t & 1 and not x_sup >> t & 1, "t must be in Y's support outside X's"
        net = self._net
        caps = self._capacities(Y, (t,))
        if reverse:
            for u in iter_bits(vertex_support(self.graph, X)):
                caps[net.sink_arcs[u]] = k_scaled
            flow = net.max_flow(caps, 2 * t + 1, net.tstar, cutoff=k_scaled)
        else:
            for u in iter_bits(vertex_support(self.graph, X)):
                caps[net.source_arcs[u]] = k_scaled
            flow = net.max_flow(caps, net.sstar, 2 * t, cutoff=k_scaled)
        return flow < k_scaled

    def is_k_connected(self, X: GraphSubset, k: int | None = None) -> bool:
        """Single-vertex support, or every vertex pair cut-value >= k."""
        kk = self.k if k is None else _check_threshold(k)
        verts = list(iter_bits(vertex_support(self.graph, X)))
        if len(verts) <= 1:
            return True
        ordered = self.graph.has_arcs
        for i, u in enumerate(verts):
            for v in verts[i + 1 :]:
                if not self.cut_at_least(u, v, X, kk):
                    return False
                if ordered and not self.cut_at_least(v, u, X, kk):
                    return False
        return True

    def is_component(self, X: GraphSubset) -> bool:
        """Membership test: inside the ground set, heavy enough, k-connected."""
        if not X or not X.issubset(self.ground):
            return False
        if self._support_weight_scaled(X) < self.k_scaled:
            return False
        return self.is_k_connected(X)
