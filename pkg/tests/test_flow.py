"""Mixed graphs, induced weights, min cuts, and the weak-vertex test."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from connenum import (
    Coefficients,
    Edge,
    GraphSubset,
    MetaWeightSystem,
    MixedGraph,
    vertex_support,
)
from connenum.brute import brute_kappa, brute_lambda, brute_mu
from connenum.sampling import (
    random_mixed_graph,
    random_monotone_system,
    random_subset_pair,
)
from connenum.systems import (
    edge_induced_system,
    global_weight_system,
    induced_weight_system,
)
from helpers import gadget_graph


def test_graph_validation():
    with pytest.raises(ValueError):
        MixedGraph.build(2, undirected=[(0, 0)])
    with pytest.raises(ValueError):
        MixedGraph.build(2, undirected=[(0, 2)])
    with pytest.raises(ValueError):
        MixedGraph(2, [Edge(1, 0, 1)])
    g = MixedGraph.build(3, undirected=[(0, 1), (0, 1)], arcs=[(1, 2)])
    assert g.m == 3 and g.has_arcs
    assert g.support_of(0b100) == 0b110


def test_induced_weight_cases():
    # induced-connectivity weights: only edges inside the support count
    graph = gadget_graph()
    system = induced_weight_system(graph, 2, "edge")
    X = GraphSubset(0b0011, 0)  # vertices v0, v1
    assert system.induced_weight(X, graph.edges[0]) == 1  # edge v0-v1, both inside
    assert system.induced_weight(X, graph.edges[3]) == 0  # edge v2-v3, both outside
    assert system.induced_weight(X, graph.edges[1]) == 0  # crossing edge v0-v2
    assert system.induced_weight(X, 0) == 2  # vertex inside carries its weight
    assert system.induced_weight(X, 3) == 0  # vertex outside zeroed out


def test_induced_weight_member_and_directed_cases():
    graph = MixedGraph.build(3, undirected=[(0, 1)], arcs=[(1, 2), (2, 0)])
    coeffs = Coefficients(
        alpha=1,
        cross_und=Fraction(1, 2),
        cross_out=Fraction(1, 3),
        cross_in=Fraction(1, 4),
        beta_edge=Fraction(1, 6),
        beta_vertex=Fraction(1, 2),
    )
    system = MetaWeightSystem(graph, 2, 6, coeffs, 1)
    member = GraphSubset(0, 0b001)  # just the undirected edge 0-1
    assert system.induced_weight(member, graph.edges[0]) == 6
    # arc 1->2 leaves the support {0,1}
    assert system.induced_weight(member, graph.edges[1]) == 2
    # arc 2->0 enters the support
    assert system.induced_weight(member, graph.edges[2]) == Fraction(3, 2)
    assert system.induced_weight(member, 2) == 1  # outside vertex, beta * w
    solo = GraphSubset(0b100, 0)
    assert system.induced_weight(solo, graph.edges[0]) == 1  # fully outside edge
    assert system.induced_weight(solo, 2) == 2


def test_monotonicity_validation():
    graph = MixedGraph.build(2, undirected=[(0, 1)])
    with pytest.raises(ValueError):
        MetaWeightSystem(graph, 1, 1, Coefficients(alpha=2), 1)
    with pytest.raises(ValueError):
        MetaWeightSystem(
            graph, 1, 1, Coefficients(alpha=0, cross_und=1, beta_edge=0), 1
        )
    with pytest.raises(ValueError):
        MetaWeightSystem(graph, 1, 1, Coefficients(beta_vertex=2), 1)
    with pytest.raises(TypeError):
        MetaWeightSystem(graph, 0.5, 1, Coefficients(), 1)
    with pytest.raises(ValueError):
        MetaWeightSystem(graph, 1, 1, Coefficients(), -1)


def test_min_cut_gadget_values():
    graph = gadget_graph()
    # whole-graph connectivity weights with a cap beyond any cut value
    system = global_weight_system(graph, graph.m + 1, "edge")
    X = GraphSubset(graph.full_vertex_mask(), 0)
    assert system.min_cut_value(0, 1, X) == 2
    assert system.min_cut_value(2, 3, X) == 1
    with pytest.raises(ValueError):
        system.min_cut_value(0, 0, X)


def test_cut_certificate_recomputes():
    rng = random.Random(23)
    for _ in range(40):
        graph = random_mixed_graph(rng, n_max=5, m_max=8, arc_prob=0.3)
        if graph.n < 2:
            continue
        system = random_monotone_system(rng, graph)
        X, _ = random_subset_pair(rng, graph)
        s, t = rng.sample(range(graph.n), 2)
        value, cert = system.min_cut_value(s, t, X, certificate=True)
        assert s in cert.source_side and t in cert.sink_side
        assert not (cert.source_side & cert.sink_side)
        recomputed = sum(system.induced_weight(X, v) for v in cert.bypassed)
        for edge in graph.edges:
            crossing = (edge.u in cert.source_side and edge.v in cert.sink_side) or (
                not edge.directed
                and edge.v in cert.source_side
                and edge.u in cert.sink_side
            )
            if crossing:
                recomputed += system.induced_weight(X, edge)
        assert recomputed == value == cert.value


def test_min_cut_matches_partition_scan():
    rng = random.Random(31)
    checked = 0
    for _ in range(80):
        graph = random_mixed_graph(rng, n_max=5, m_max=9, arc_prob=0.4)
        if graph.n < 2:
            continue
        system = random_monotone_system(rng, graph)
        X, _ = random_subset_pair(rng, graph)
        s, t = rng.sample(range(graph.n), 2)
        assert system.min_cut_value(s, t, X) == brute_mu(system, s, t, X)
        checked += 1
    assert checked >= 60


def test_specialization_to_plain_connectivity():
    rng = random.Random(41)
    for _ in range(25):
        graph = random_mixed_graph(rng, n_max=6, m_max=10, arc_prob=0.25)
        if graph.n < 2:
            continue
        full = GraphSubset(graph.full_vertex_mask(), 0)
        # vertex cap above any edge-cut value: cut values equal edge connectivity
        edge_sys = global_weight_system(graph, graph.m + 1, "edge")
        vertex_sys = global_weight_system(graph, 2, "vertex")
        for s in range(graph.n):
            for t in range(graph.n):
                if s == t:
                    continue
                assert edge_sys.min_cut_value(s, t, full) == brute_lambda(graph, s, t)
                assert vertex_sys.min_cut_value(s, t, full) == brute_kappa(graph, s, t)


def test_specialization_inside_induced_subgraph():
    rng = random.Random(43)
    for _ in range(20):
        graph = random_mixed_graph(rng, n_max=6, m_max=9, arc_prob=0.2)
        if graph.n < 2:
            continue
        vmask = rng.randint(0, graph.full_vertex_mask())
        members = [v for v in range(graph.n) if vmask >> v & 1]
        if len(members) < 2:
            continue
        X = GraphSubset(vmask, 0)
        sub_edges = []
        for e in graph.edges:
            if graph.endpoint_mask[e.id] & ~vmask == 0:
                sub_edges.append(e)
        relabel = {v: i for i, v in enumerate(members)}
        sub = MixedGraph(
            len(members),
            [
                Edge(i, relabel[e.u], relabel[e.v], e.directed)
                for i, e in enumerate(sub_edges)
            ],
        )
        edge_sys = induced_weight_system(graph, graph.m + 1, "edge")
        vertex_sys = induced_weight_system(graph, 2, "vertex")
        for s in members:
            for t in members:
                if s == t:
                    continue
                assert edge_sys.min_cut_value(s, t, X) == brute_lambda(
                    sub, relabel[s], relabel[t]
                )
                assert vertex_sys.min_cut_value(s, t, X) == brute_kappa(
                    sub, relabel[s], relabel[t]
                )


def test_weak_vertex_gadget_examples():
    graph = gadget_graph()
    system = induced_weight_system(graph, 2, "edge")
    X = GraphSubset(0b0001, 0)
    Y = GraphSubset(graph.full_vertex_mask(), 0)
    assert system.exists_weak_vertex(X, 3, Y) is True
    assert system.exists_weak_vertex(X, 1, Y) is False
    assert system.exists_weak_vertex(X, 3, Y, k=0) is False


def test_weak_vertex_agrees_with_direct_scan():
    rng = random.Random(53)
    checked = 0
    for _ in range(200):
        graph = random_mixed_graph(rng, n_max=6, m_max=9, arc_prob=0.2)
        if graph.n < 2:
            continue
        system = random_monotone_system(rng, graph, k_max=3)
        k = system.k
        X, Y = random_subset_pair(rng, graph)
        if not X:
            continue
        if system._support_weight_scaled(X) < system.k_scaled:
            continue
        x_verts = list(
            v for v in range(graph.n) if vertex_support(graph, X) >> v & 1
        )
        # the one-flow test is only promised when X's own vertices are mutually
        # connected at level k inside Y
        if not all(
            system.cut_at_least(u, v, Y) and system.cut_at_least(v, u, Y)
            for u in x_verts
            for v in x_verts
            if u != v
        ):
            continue
        outside = [
            t
            for t in range(graph.n)
            if vertex_support(graph, Y) >> t & 1 and t not in x_verts
        ]
        if not outside:
            continue
        t = rng.choice(outside)
        direct = any(not system.cut_at_least(u, t, Y, k) for u in x_verts)
        assert system.exists_weak_vertex(X, t, Y) == direct
        checked += 1
    assert checked >= 30


def test_meta_weight_monotone():
    rng = random.Random(61)
    for _ in range(40):
        graph = random_mixed_graph(rng, n_max=6, m_max=9, arc_prob=0.3)
        system = random_monotone_system(rng, graph)
        X, Y = random_subset_pair(rng, graph)
        for v in range(graph.n):
            assert system.induced_weight(Y, v) >= system.induced_weight(X, v)
        for edge in graph.edges:
            assert system.induced_weight(Y, edge) >= system.induced_weight(X, edge)


def test_cut_value_monotone():
    rng = random.Random(67)
    checked = 0
    for _ in range(60):
        graph = random_mixed_graph(rng, n_max=5, m_max=8, arc_prob=0.3)
        if graph.n < 2:
            continue
        system = random_monotone_system(rng, graph)
        X, Y = random_subset_pair(rng, graph)
        s, t = rng.sample(range(graph.n), 2)
        assert system.min_cut_value(s, t, X) <= system.min_cut_value(s, t, Y)
        checked += 1
    assert checked >= 40


def test_union_of_connected_sets_stays_connected():
    rng = random.Random(71)
    checked = 0
    for _ in range(250):
        graph = random_mixed_graph(rng, n_max=6, m_max=10, arc_prob=0.2)
        system = random_monotone_system(rng, graph, k_max=2)
        X, _ = random_subset_pair(rng, graph)
        Y, _ = random_subset_pair(rng, graph)
        both = X & Y
        if not both:
            continue
        if system._support_weight_scaled(both) < system.k_scaled:
            continue
        if not (system.is_k_connected(X) and system.is_k_connected(Y)):
            continue
        assert system.is_k_connected(X | Y)
        checked += 1
    assert checked >= 25


def test_singletons_are_connected():
    graph = gadget_graph()
    system = induced_weight_system(graph, 5, "edge")
    assert system.is_k_connected(GraphSubset(0b1000, 0))
    assert system.is_component(GraphSubset(0b1000, 0))
    system_v = induced_weight_system(graph, 5, "vertex")
    assert not system_v.is_component(GraphSubset(0b1000, 0))  # weight 1 < 5
