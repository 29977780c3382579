"""Shared builders and checked-enumeration helpers for the test suite."""

from __future__ import annotations

import random

from connenum import (
    ConnectedOracle,
    ElementSet,
    FamilyTreeCursor,
    Instance,
    MixedGraph,
    SystemMode,
    build_oracle,
)
from connenum.brute import brute_mode_membership, brute_solutions
from connenum.enumeration import enumerate_components, enumerate_solutions
from connenum.sampling import random_instance, random_mixed_graph

# Four-vertex gadget: triangle 0-1-2 with pendant 3 hanging off vertex 2.
# Items: v0 -> {1,2,3}, v1 -> {1,3}, v2 -> {1,2}, v3 -> {3}.
GADGET_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3)]
GADGET_ITEMS = [[1, 2, 3], [1, 3], [1, 2], [3]]
GADGET_CONNECTORS = {
    (0,): (1, 2, 3),
    (3,): (3,),
    (0, 1): (1, 3),
    (0, 2): (1, 2),
    (0, 1, 2): (1,),
    (0, 1, 2, 3): (),
}

GADGET_FILE = """# triangle with a pendant vertex
v 1 1,2,3
v 2 1,3
v 3 1,2
v 4 3
e 1 2
e 1 3
e 2 3
e 3 4
"""


def gadget_graph() -> MixedGraph:
    return MixedGraph.build(4, undirected=GADGET_EDGES)


def gadget_instance() -> Instance:
    graph = gadget_graph()
    return Instance.of_items(GADGET_ITEMS, 3, ConnectedOracle(graph))


def es(n: int, *members: int) -> ElementSet:
    return ElementSet.of(n, members)


def checked_solutions(inst: Instance, volume=None) -> tuple[set[tuple[int, ...]], FamilyTreeCursor]:
    """Enumerate solutions while asserting the delay and depth invariants."""
    cursor = FamilyTreeCursor(inst)
    seen: list[tuple[int, ...]] = []
    for rec in enumerate_solutions(inst, volume, cursor):
        assert rec.items == inst.common_items(rec.elements)
        assert rec.k == rec.items.min_or_zero()
        seen.append(rec.elements.as_tuple())
    assert len(seen) == len(set(seen)), "duplicate solutions emitted"
    assert cursor.outputs == len(seen)
    assert cursor.max_descendants_gap <= 3
    assert cursor.max_depth_load <= inst.n + 1
    return set(seen), cursor


def checked_components(oracle, ground_size: int, volume=None):
    cursor = FamilyTreeCursor()
    seen = []
    for elements in enumerate_components(oracle, ground_size, volume, cursor):
        seen.append(elements.as_tuple())
    assert len(seen) == len(set(seen)), "duplicate components emitted"
    assert cursor.max_descendants_gap <= 3
    assert cursor.max_depth_load <= ground_size + 1
    return set(seen), cursor


def assert_mode_equivalence(rng: random.Random, mode: SystemMode, *, n_max: int, m_max: int, q_max: int = 5):
    """One random instance: the traversal must match the exhaustive scan."""
    graph = random_mixed_graph(rng, n_max=n_max, m_max=m_max)
    oracle, ground_size = build_oracle(graph, mode)
    if ground_size == 0:
        return None
    inst = random_instance(rng, oracle, ground_size, q_max=q_max)
    got, cursor = checked_solutions(inst)
    member = brute_mode_membership(graph, mode)
    want = {rec.elements.as_tuple() for rec in brute_solutions(inst, member)}
    assert got == want, f"mode={mode.kind} k={mode.k} n={graph.n} m={graph.m}"
    return cursor
