"""Exhaustive reference implementations used as ground truth in tests.

Everything here enumerates rather than optimises: components by scanning all
subsets, connectivity values by scanning all cuts.  Hard input-size guards
fail loudly instead of truncating.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .core import ElementSet, Instance, iter_bits
from .enumeration import SolutionRecord
from .flow import GraphSubset, MetaWeightSystem, MixedGraph, vertex_support
from .systems import SystemMode

MembershipPredicate = Callable[[ElementSet], bool]

_COMPONENT_GUARD = 20
_SOLUTION_GUARD = 12
_CUT_GUARD = 7


def brute_components(member: MembershipPredicate, n: int) -> list[ElementSet]:
    """Every non-empty subset accepted by the membership predicate."""
    if n > _COMPONENT_GUARD:
        raise ValueError(f"ground set of {n} exceeds the guard of {_COMPONENT_GUARD}")
    out = []
    for mask in range(1, 1 << n):
        candidate = ElementSet(n, mask)
        if member(candidate):
            out.append(candidate)
    return out


def brute_solutions(
    inst: Instance, member: MembershipPredicate | None = None
) -> list[SolutionRecord]:
    """Solutions by the definition: components whose every strict component
    superset loses at least one common item.

    Membership defaults to asking the instance's own oracle whether the set
    is its own maximal component; pass an independent predicate to keep the
    reference fully separate from the oracle under test.
    """
    if inst.n > _SOLUTION_GUARD:
        raise ValueError(f"ground set of {inst.n} exceeds the guard of {_SOLUTION_GUARD}")
    if member is None:
        member = lambda X: inst.system.l1(X, X) == X
    comps: list[tuple[int, int]] = []  # (element mask, common item mask)
    for mask in range(1, 1 << inst.n):
        candidate = ElementSet(inst.n, mask)
        if member(candidate):
            comps.append((mask, inst.common_items(candidate).mask))
    out = []
    for mask, items in comps:
        is_solution = True
        for other_mask, other_items in comps:
            if other_mask != mask and other_mask & mask == mask and other_items == items:
                is_solution = False
                break
        if is_solution:
            elements = ElementSet(inst.n, mask)
            rec = SolutionRecord(
                elements,
                inst.common_items(elements),
                inst.common_items(elements).min_or_zero(),
            )
            out.append(rec)
    return out


def _check_cut_guard(graph: MixedGraph) -> None:
    if graph.n > _CUT_GUARD:
        raise ValueError(f"{graph.n} vertices exceed the cut guard of {_CUT_GUARD}")


def _crossing_count(graph: MixedGraph, emask: int, smask: int, tmask: int) -> int:
    """Edges in emask leaving smask for tmask (undirected in either order)."""
    count = 0
    for e in iter_bits(emask):
        edge = graph.edges[e]
        u_bit = 1 << edge.u
        v_bit = 1 << edge.v
        if u_bit & smask and v_bit & tmask:
            count += 1
        elif not edge.directed and v_bit & smask and u_bit & tmask:
            count += 1
    return count


def _lambda_in(graph: MixedGraph, emask: int, vmask: int, s: int, t: int) -> int:
    """Edge-removal connectivity inside the restricted subgraph: the minimum
    crossing count over every two-sided split of the allowed vertices."""
    others = [v for v in iter_bits(vmask) if v not in (s, t)]
    best = None
    for assign in range(1 << len(others)):
        smask = 1 << s
        tmask = 1 << t
        for i, v in enumerate(others):
            if assign >> i & 1:
                smask |= 1 << v
            else:
                tmask |= 1 << v
        value = _crossing_count(graph, emask, smask, tmask)
        if best is None or value < best:
            best = value
    return best


def _kappa_in(graph: MixedGraph, emask: int, vmask: int, s: int, t: int) -> int:
    """Mixed-removal connectivity: minimum crossing edges plus bypassed
    vertices over every ordered three-way split of the allowed vertices."""
    others = [v for v in iter_bits(vmask) if v not in (s, t)]
    best = None
    for assign in range(3 ** len(others)):
        smask = 1 << s
        tmask = 1 << t
        bypass = 0
        a = assign
        for v in others:
            part = a % 3
            a //= 3
            if part == 0:
                smask |= 1 << v
            elif part == 1:
                tmask |= 1 << v
            else:
                bypass += 1
        value = _crossing_count(graph, emask, smask, tmask) + bypass
        if best is None or value < best:
            best = value
    return best


def _edge_splits_at_least(graph: MixedGraph, emask: int, vmask: int, k: int) -> bool:
    """Every proper two-sided split of the allowed vertices is crossed by at
    least k edges; splits separating some ordered pair stand in for all
    pairwise edge-removal values."""
    verts = list(iter_bits(vmask))
    n = len(verts)
    if n <= 1 or k <= 0:
        return True
    edges = [graph.edges[e] for e in iter_bits(emask)]
    for assign in range(1, (1 << n) - 1):
        smask = 0
        for i in range(n):
            if assign >> i & 1:
                smask |= 1 << verts[i]
        tmask = vmask & ~smask
        count = 0
        for edge in edges:
            u_bit = 1 << edge.u
            v_bit = 1 << edge.v
            if (u_bit & smask and v_bit & tmask) or (
                not edge.directed and v_bit & smask and u_bit & tmask
            ):
                count += 1
                if count >= k:
                    break
        if count < k:
            return False
    return True


def _mixed_splits_at_least(graph: MixedGraph, emask: int, vmask: int, k: int) -> bool:
    """Every ordered three-way split with both terminal sides non-empty costs
    at least k, counting crossing edges plus bypassed vertices."""
    verts = list(iter_bits(vmask))
    n = len(verts)
    if n <= 1 or k <= 0:
        return True
    edges = [graph.edges[e] for e in iter_bits(emask)]
    for assign in range(3**n):
        smask = 0
        tmask = 0
        bypass = 0
        a = assign
        for i in range(n):
            part = a % 3
            a //= 3
            if part == 0:
                smask |= 1 << verts[i]
            elif part == 1:
                tmask |= 1 << verts[i]
            else:
                bypass += 1
        if not smask or not tmask:
            continue
        if bypass >= k:
            continue
        count = bypass
        for edge in edges:
            u_bit = 1 << edge.u
            v_bit = 1 << edge.v
            if (u_bit & smask and v_bit & tmask) or (
                not edge.directed and v_bit & smask and u_bit & tmask
            ):
                count += 1
                if count >= k:
                    break
        if count < k:
            return False
    return True


def brute_lambda(graph: MixedGraph, s: int, t: int) -> int:
    """Minimum number of edges whose removal leaves no path from s to t."""
    _check_cut_guard(graph)
    if s == t:
        raise ValueError("endpoints must differ")
    return _lambda_in(graph, graph.full_edge_mask(), graph.full_vertex_mask(), s, t)


def brute_kappa(graph: MixedGraph, s: int, t: int) -> int:
    """Minimum number of edges plus vertices (avoiding s and t) whose removal
    leaves no path from s to t."""
    _check_cut_guard(graph)
    if s == t:
        raise ValueError("endpoints must differ")
    return _kappa_in(graph, graph.full_edge_mask(), graph.full_vertex_mask(), s, t)


def brute_mu(system: MetaWeightSystem, s: int, t: int, X: GraphSubset) -> Fraction:
    """Minimum induced cut weight by scanning every ordered three-way split."""
    graph = system.graph
    _check_cut_guard(graph)
    if s == t:
        raise ValueError("endpoints must differ")
    vsup = vertex_support(graph, X)
    others = [v for v in range(graph.n) if v not in (s, t)]
    best = None
    for assign in range(3 ** len(others)):
        smask = 1 << s
        tmask = 1 << t
        rmask = 0
        a = assign
        for v in others:
            part = a % 3
            a //= 3
            if part == 0:
                smask |= 1 << v
            elif part == 1:
                tmask |= 1 << v
            else:
                rmask |= 1 << v
        value = 0
        for edge in graph.edges:
            u_bit = 1 << edge.u
            v_bit = 1 << edge.v
            crossing = bool(u_bit & smask and v_bit & tmask) or (
                not edge.directed and bool(v_bit & smask and u_bit & tmask)
            )
            if crossing:
                value += system._edge_weight_scaled(X, edge, vsup)
        for v in iter_bits(rmask):
            value += system._vertex_weight_scaled(X, v, vsup)
        if best is None or value < best:
            best = value
    return Fraction(best, system.scale)


def connected_membership(graph: MixedGraph) -> MembershipPredicate:
    """Plain search-based connectivity of the induced subgraph."""
    adj = graph.underlying_adjacency()

    def member(X: ElementSet) -> bool:
        if not X:
            return False
        seen = {X.min_element()}
        stack = [X.min_element()]
        while stack:
            v = stack.pop()
            for w in iter_bits(adj[v] & X.mask):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(X)

    return member


def brute_mode_membership(graph: MixedGraph, mode: SystemMode) -> MembershipPredicate:
    """Cut-enumeration membership for every mode, independent of max flow."""
    kind = mode.kind
    k = mode.k
    if kind == "connected":
        return connected_membership(graph)
    _check_cut_guard(graph)
    full_e = graph.full_edge_mask()
    full_v = graph.full_vertex_mask()

    if kind in ("global-k-edge", "global-k-vertex"):
        pair_ok: dict[tuple[int, int], bool] = {}

        def whole_graph_pair(u: int, v: int) -> bool:
            key = (u, v)
            if key not in pair_ok:
                if kind == "global-k-edge":
                    good = _lambda_in(graph, full_e, full_v, u, v) >= k
                else:
                    good = _kappa_in(graph, full_e, full_v, u, v) >= k
                if graph.has_arcs and good:
                    if kind == "global-k-edge":
                        good = _lambda_in(graph, full_e, full_v, v, u) >= k
                    else:
                        good = _kappa_in(graph, full_e, full_v, v, u) >= k
                pair_ok[key] = good
            return pair_ok[key]

        def member(X: ElementSet) -> bool:
            if not X:
                return False
            if kind == "global-k-vertex" and len(X) < k:
                return False
            if len(X) == 1:
                return True
            members = X.as_tuple()
            for i, u in enumerate(members):
                for v in members[i + 1 :]:
                    if not whole_graph_pair(u, v):
                        return False
            return True

        return member

    if kind in ("induced-k-edge", "induced-k-vertex"):
        vertex_flavor = kind == "induced-k-vertex"

        def member(X: ElementSet) -> bool:
            if not X:
                return False
            if vertex_flavor and len(X) < k:
                return False
            if len(X) == 1:
                return True
            emask = 0
            for e in graph.edges:
                if graph.endpoint_mask[e.id] & ~X.mask == 0:
                    emask |= 1 << e.id
            if vertex_flavor:
                return _mixed_splits_at_least(graph, emask, X.mask, k)
            return _edge_splits_at_least(graph, emask, X.mask, k)

        return member

    vertex_flavor = kind == "edge-induced-k-vertex"

    def member(F: ElementSet) -> bool:
        if not F:
            return False
        vmask = graph.support_of(F.mask)
        if vertex_flavor and vmask.bit_count() < k:
            return False
        if vmask.bit_count() == 1:
            return True
        if vertex_flavor:
            return _mixed_splits_at_least(graph, F.mask, vmask, k)
        return _edge_splits_at_least(graph, F.mask, vmask, k)

    return member
