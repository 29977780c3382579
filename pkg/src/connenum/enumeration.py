"""Family-tree enumeration of maximal-common-item solutions and components.

Solutions are grouped by the smallest common item k.  For each k the roots
("bases") are the maximal components among the elements carrying item k; every
other solution is reached from its unique parent, the minimal superset
solution with the smallest item set in the ``lex_less`` order.  Children are
emitted before or after their own subtree depending on the depth parity, which
keeps the number of recursive calls between consecutive outputs bounded by a
constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import ElementSet, Instance, ItemSet, VolumeFunction, iter_bits


@dataclass(frozen=True)
class SolutionRecord:
    """A solution: its elements, their common items, and the smallest item."""

    elements: ElementSet
    items: ItemSet
    k: int


class FamilyTreeCursor:
    """Instrumented state for one traversal; not shareable across threads.

    ``d`` is the number of unfinished descendant expansions.  The counters
    feed the delay report: the gap statistics aggregate oracle calls and
    expansion starts between consecutive outputs.
    """

    def __init__(self, instance: Instance | None = None, k: int = 0):
        self.instance = instance
        self.k = k
        self.d = 0
        self.l1_calls = 0
        self.l2_calls = 0
        self.rho_calls = 0
        self.descendants_calls = 0
        self.outputs = 0
        self.max_descendants_gap = 0
        self.max_depth_load = 0  # max over active frames of |S| + depth
        self.oracle_gap_max = 0
        self._oracle_gap_sum = 0
        self._gap_count = 0
        self._last_out_desc = 0
        self._last_out_oracle = 0

    @property
    def oracle_calls(self) -> int:
        return self.l1_calls + self.l2_calls

    @property
    def oracle_gap_mean(self) -> float:
        if not self._gap_count:
            return 0.0
        return self._oracle_gap_sum / self._gap_count

    def l1(self, X: ElementSet, Y: ElementSet) -> ElementSet:
        self.l1_calls += 1
        return self.instance.system.l1(X, Y)

    def l2(self, Y: ElementSet) -> list[ElementSet]:
        self.l2_calls += 1
        return self.instance.system.l2(Y)

    def _positive(self, volume: VolumeFunction | None, X: ElementSet) -> bool:
        if volume is None:
            return True
        self.rho_calls += 1
        return volume.eval_positive(X)

    def _note_descend(self, size: int) -> None:
        self.descendants_calls += 1
        self.d += 1
        load = size + self.d
        if load > self.max_depth_load:
            self.max_depth_load = load

    def _note_return(self) -> None:
        self.d -= 1

    def _note_output(self) -> None:
        self.outputs += 1
        if self.outputs > 1:
            gap = self.descendants_calls - self._last_out_desc
            if gap > self.max_descendants_gap:
                self.max_descendants_gap = gap
            ogap = self.oracle_calls - self._last_out_oracle
            if ogap > self.oracle_gap_max:
                self.oracle_gap_max = ogap
            self._oracle_gap_sum += ogap
            self._gap_count += 1
        self._last_out_desc = self.descendants_calls
        self._last_out_oracle = self.oracle_calls


def _record(inst: Instance, elements: ElementSet) -> SolutionRecord:
    items = inst.common_items(elements)
    return SolutionRecord(elements, items, items.min_or_zero())


def bases(inst: Instance, k: int, cursor: FamilyTreeCursor | None = None) -> list[SolutionRecord]:
    """Roots of the family tree for item k: maximal components among the
    carriers of k whose smallest common item is exactly k."""
    if not 0 <= k <= inst.q:
        raise ValueError(f"k={k} outside [0, {inst.q}]")
    cur = cursor or FamilyTreeCursor(inst, k)
    carriers = inst.restrict_item(k)
    if not carriers:
        return []
    out = []
    for comp in cur.l2(carriers):
        rec = _record(inst, comp)
        if rec.k == k:
            out.append(rec)
    return out


def _lexmin_parent(
    inst: Instance,
    elements: ElementSet,
    items: ItemSet,
    k: int,
    cur: FamilyTreeCursor,
) -> ElementSet:
    """Greedy construction of the lex-min superset solution of ``elements``.

    Items above k are admitted in ascending order whenever restricting to
    them still leaves a strictly larger enclosing component.
    """
    scope = inst.restrict_item(k)
    for i in iter_bits(items.mask & ~((1 << (k + 1)) - 1)):
        narrowed = scope & inst.restrict_item(i)
        grown = cur.l1(elements, narrowed)
        if grown and grown.mask != elements.mask:
            scope = narrowed
    return cur.l1(elements, scope)


def parent(
    inst: Instance,
    record: SolutionRecord,
    k: int | None = None,
    cursor: FamilyTreeCursor | None = None,
) -> SolutionRecord:
    """The lex-min minimal superset solution of a non-base solution."""
    kk = record.k if k is None else k
    if not 1 <= kk <= inst.q - 1:
        raise ValueError(f"k={kk} outside [1, {inst.q - 1}]")
    if record.items.min_or_zero() != kk:
        raise ValueError("record's smallest common item differs from k")
    cur = cursor or FamilyTreeCursor(inst, kk)
    within_k = cur.l1(record.elements, inst.restrict_item(kk))
    if within_k.mask == record.elements.mask:
        raise ValueError("record is a base and has no parent")
    grown = _lexmin_parent(inst, record.elements, record.items, kk, cur)
    return _record(inst, grown)


def _child_stream(
    inst: Instance,
    t: SolutionRecord,
    k: int,
    cur: FamilyTreeCursor,
) -> Iterator[SolutionRecord]:
    above = ItemSet(inst.q, ItemSet.full(inst.q).mask & ~((1 << (k + 1)) - 1))
    for j in above - t.items:
        scoped = t.elements & inst.restrict_item(j)
        if not scoped:
            continue
        for comp in cur.l2(scoped):
            c_items = inst.common_items(comp)
            if c_items.min_or_zero() != k:
                continue
            extra = c_items - t.items
            if extra.min_or_zero() != j:
                continue  # this child belongs to an earlier j
            grown = _lexmin_parent(inst, comp, c_items, k, cur)
            if grown.mask == t.elements.mask:
                yield SolutionRecord(comp, c_items, k)


def children(
    inst: Instance,
    record: SolutionRecord,
    k: int | None = None,
    cursor: FamilyTreeCursor | None = None,
) -> Iterator[SolutionRecord]:
    """All children of a solution, each emitted as soon as it is confirmed."""
    kk = record.k if k is None else k
    if not 1 <= kk <= inst.q - 1:
        raise ValueError(f"k={kk} outside [1, {inst.q - 1}]")
    if record.items.min_or_zero() != kk:
        raise ValueError("record's smallest common item differs from k")
    cur = cursor or FamilyTreeCursor(inst, kk)
    return _child_stream(inst, record, kk, cur)


@dataclass
class _Frame:
    record: SolutionRecord
    depth: int  # parity depth; the first expansion below a base runs at 2
    pending: Iterator[SolutionRecord]
    emit_on_pop: SolutionRecord | None


def _descend(
    inst: Instance,
    root: SolutionRecord,
    k: int,
    volume: VolumeFunction | None,
    cur: FamilyTreeCursor,
) -> Iterator[SolutionRecord]:
    stack = [_Frame(root, 2, _child_stream(inst, root, k, cur), None)]
    cur._note_descend(len(root.elements))
    while stack:
        frame = stack[-1]
        child = next(frame.pending, None)
        if child is None:
            stack.pop()
            cur._note_return()
            if frame.emit_on_pop is not None:
                cur._note_output()
                yield frame.emit_on_pop
            continue
        if not cur._positive(volume, child.elements):
            continue  # descendants only shrink, so the whole subtree is pruned
        if frame.depth % 2 == 1:
            cur._note_output()
            yield child
            emit_on_pop = None
        else:
            emit_on_pop = child
        stack.append(_Frame(child, frame.depth + 1, _child_stream(inst, child, k, cur), emit_on_pop))
        cur._note_descend(len(child.elements))


def enumerate_solutions_k(
    inst: Instance,
    k: int,
    volume: VolumeFunction | None = None,
    cursor: FamilyTreeCursor | None = None,
) -> Iterator[SolutionRecord]:
    """All volume-positive solutions whose smallest common item is k."""
    if not 0 <= k <= inst.q:
        raise ValueError(f"k={k} outside [0, {inst.q}]")
    cur = cursor or FamilyTreeCursor(inst, k)
    if cur.instance is None:
        cur.instance = inst
    cur.k = k
    if volume is None:
        volume = inst.volume
    carriers = inst.restrict_item(k)
    if not carriers:
        return
    for comp in cur.l2(carriers):
        rec = _record(inst, comp)
        if rec.k != k:
            continue
        if not cur._positive(volume, rec.elements):
            continue
        cur._note_output()
        yield rec
        if 1 <= k <= inst.q - 1:
            yield from _descend(inst, rec, k, volume, cur)


def enumerate_solutions(
    inst: Instance,
    volume: VolumeFunction | None = None,
    cursor: FamilyTreeCursor | None = None,
) -> Iterator[SolutionRecord]:
    """All volume-positive solutions, grouped by ascending smallest item."""
    cur = cursor or FamilyTreeCursor(inst, 0)
    for k in range(inst.q + 1):
        yield from enumerate_solutions_k(inst, k, volume, cur)


def enumerate_components(
    system,
    n: int,
    volume: VolumeFunction | None = None,
    cursor: FamilyTreeCursor | None = None,
) -> Iterator[ElementSet]:
    """All volume-positive components of a transitive system on n elements.

    Element v is given every item except v+1; under that assignment every
    component is a solution, so the solution enumerator visits each exactly
    once.
    """
    if n < 1:
        raise ValueError("ground set must be non-empty")
    full = ItemSet.full(n).mask
    sigma = [ItemSet(n, full & ~(1 << (v + 1))) for v in range(n)]
    inst = Instance(sigma, system)
    for rec in enumerate_solutions(inst, volume, cursor):
        yield rec.elements
