"""Seeded random graphs, item assignments, and weight systems.

Shared by the CLI self-test and the test suite so both exercise the same
instance shapes.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Instance
from .flow import Coefficients, Edge, GraphSubset, MetaWeightSystem, MixedGraph


def random_mixed_graph(
    rng: random.Random,
    n_max: int = 7,
    m_max: int = 12,
    arc_prob: float = 0.0,
    multi_prob: float = 0.15,
    n_min: int = 2,
) -> MixedGraph:
    n = rng.randint(n_min, n_max)
    m = rng.randint(0, m_max) if n > 1 else 0
    edges: list[Edge] = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        if edges and rng.random() < multi_prob:
            copy = rng.choice(edges)
            u, v = copy.u, copy.v
        directed = rng.random() < arc_prob
        edges.append(Edge(len(edges), u, v, directed))
    return MixedGraph(n, edges)


def random_items(rng: random.Random, n: int, q: int, empty_prob: float = 0.15) -> list[list[int]]:
    out = []
    for _ in range(n):
        if rng.random() < empty_prob:
            out.append([])
        else:
            size = rng.randint(1, q)
            out.append(sorted(rng.sample(range(1, q + 1), size)))
    return out


def random_instance(
    rng: random.Random,
    system,
    n: int,
    q_max: int = 5,
) -> Instance:
    q = rng.randint(1, q_max)
    return Instance.of_items(random_items(rng, n, q), q, system)


def random_monotone_system(
    rng: random.Random,
    graph: MixedGraph,
    k_max: int = 3,
    fractional: bool = True,
) -> MetaWeightSystem:
    """A weight system with randomly drawn but order-respecting coefficients."""
    denom = 12 if fractional else 1
    m = graph.m
    alpha_raw = [rng.randint(0, denom) for _ in range(m)]
    beta_e_raw = [rng.randint(0, a) for a in alpha_raw]
    cross_und_raw = [rng.randint(b, a) for a, b in zip(alpha_raw, beta_e_raw)]
    cross_out_raw = [rng.randint(b, a) for a, b in zip(alpha_raw, beta_e_raw)]
    cross_in_raw = [rng.randint(b, a) for a, b in zip(alpha_raw, beta_e_raw)]
    beta_v_raw = [rng.randint(0, denom) for _ in range(graph.n)]

    def as_fracs(raw: list[int]) -> list[Fraction]:
        return [Fraction(x, denom) for x in raw]

    coefficients = Coefficients(
        as_fracs(alpha_raw),
        as_fracs(cross_und_raw),
        as_fracs(cross_out_raw),
        as_fracs(cross_in_raw),
        as_fracs(beta_e_raw),
        as_fracs(beta_v_raw),
    )
    wv = [rng.randint(0, 4) for _ in range(graph.n)]
    we = [rng.randint(0, 4) for _ in range(m)]
    k = rng.randint(0, k_max)
    return MetaWeightSystem(graph, wv, we, coefficients, k)


def random_subset_pair(rng: random.Random, graph: MixedGraph) -> tuple[GraphSubset, GraphSubset]:
    """A nested pair X <= Y of mixed vertex/edge subsets."""
    yv = rng.getrandbits(graph.n)
    ye = rng.getrandbits(graph.m) if graph.m else 0
    xv = yv & rng.getrandbits(graph.n)
    xe = ye & (rng.getrandbits(graph.m) if graph.m else 0)
    return GraphSubset(xv, xe), GraphSubset(yv, ye)
