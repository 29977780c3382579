"""Core data model: element/item bit sets, instances, and the oracle contracts.

Ground-set elements are dense 0-based indices.  Items are 1-based; index 0 is
reserved as the minimum of an empty item set, so per-item element families can
be indexed uniformly over [0, q].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Protocol, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class ElementSet:
    """Immutable fixed-capacity bit set over ground elements 0..n-1."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, mask: int = 0):
        if n < 0:
            raise ValueError("capacity must be non-negative")
        if mask < 0 or mask >> n:
            raise ValueError("mask has bits outside [0, n)")
        self.n = n
        self.mask = mask

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> "ElementSet":
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"element {v} outside [0, {n})")
            mask |= 1 << v
        return cls(n, mask)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls(n, (1 << n) - 1)

    def _check(self, other: "ElementSet") -> None:
        if self.n != other.n:
            raise ValueError("capacity mismatch")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and self.mask >> v & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ElementSet)
            and self.n == other.n
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.mask & other.mask)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.mask | other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.mask & ~other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.mask != other.mask

    def min_element(self) -> int:
        if not self.mask:
            raise ValueError("empty set has no minimum")
        return (self.mask & -self.mask).bit_length() - 1

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"ElementSet({list(self)}, n={self.n})"


class ItemSet:
    """Immutable bit set over items 1..q.

    The reserved minimum of the empty set is 0, exposed by ``min_or_zero``.
    ``lex_less`` orders subsets by the owner of the smallest item on which
    they differ, so supersets never come after their subsets.
    """

    __slots__ = ("q", "mask")

    def __init__(self, q: int, mask: int = 0):
        if q < 0:
            raise ValueError("capacity must be non-negative")
        if mask < 0 or mask & 1 or mask >> (q + 1):
            raise ValueError("mask has bits outside [1, q]")
        self.q = q
        self.mask = mask

    @classmethod
    def of(cls, q: int, items: Iterable[int]) -> "ItemSet":
        mask = 0
        for i in items:
            if not 1 <= i <= q:
                raise ValueError(f"item {i} outside [1, {q}]")
            mask |= 1 << i
        return cls(q, mask)

    @classmethod
    def full(cls, q: int) -> "ItemSet":
        return cls(q, ((1 << (q + 1)) - 1) & ~1)

    def _check(self, other: "ItemSet") -> None:
        if self.q != other.q:
            raise ValueError("capacity mismatch")

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, i: int) -> bool:
        return 1 <= i <= self.q and self.mask >> i & 1 == 1

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ItemSet) and self.q == other.q and self.mask == other.mask

    def __hash__(self) -> int:
        return hash((self.q, self.mask))

    def __and__(self, other: "ItemSet") -> "ItemSet":
        self._check(other)
        return ItemSet(self.q, self.mask & other.mask)

    def __or__(self, other: "ItemSet") -> "ItemSet":
        self._check(other)
        return ItemSet(self.q, self.mask | other.mask)

    def __sub__(self, other: "ItemSet") -> "ItemSet":
        self._check(other)
        return ItemSet(self.q, self.mask & ~other.mask)

    def __le__(self, other: "ItemSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "ItemSet") -> bool:
        return self <= other and self.mask != other.mask

    def min_or_zero(self) -> int:
        """Smallest item, or 0 when the set is empty."""
        if not self.mask:
            return 0
        return (self.mask & -self.mask).bit_length() - 1

    def lex_less(self, other: "ItemSet") -> bool:
        """Strict order: the smallest item in the symmetric difference is ours."""
        self._check(other)
        diff = self.mask ^ other.mask
        if not diff:
            return False
        return diff & -diff & self.mask != 0

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"ItemSet({list(self)}, q={self.q})"


class TransitiveSystemOracle(Protocol):
    """Behavioural contract every concrete set system implements.

    ``l1(X, Y)`` returns the maximal component Z with X <= Z <= Y (unique when
    X itself is a component), or an empty set when no such Z exists.
    ``l2(Y)`` returns all maximal components inside Y, canonically ordered.
    ``delta_hint(Y)`` bounds ``len(l2(Y))`` and never grows as Y shrinks.
    """

    def l1(self, X: ElementSet, Y: ElementSet) -> ElementSet: ...

    def l2(self, Y: ElementSet) -> list[ElementSet]: ...

    def delta_hint(self, Y: ElementSet) -> int: ...


class VolumeFunction(Protocol):
    """Monotone pruning predicate: growing a set can only turn it positive."""

    def eval_positive(self, X: ElementSet) -> bool: ...


@dataclass(frozen=True)
class SizeThreshold:
    """Positive exactly on sets with more than ``floor`` elements."""

    floor: int

    def eval_positive(self, X: ElementSet) -> bool:
        return len(X) > self.floor


class Instance:
    """Enumeration instance: ground set, per-element item sets, system oracle."""

    def __init__(
        self,
        sigma: Sequence[ItemSet],
        system: TransitiveSystemOracle,
        volume: VolumeFunction | None = None,
    ):
        if not sigma:
            raise ValueError("instance needs at least one element")
        q = sigma[0].q
        if q < 1:
            raise ValueError("instance needs at least one item")
        if any(s.q != q for s in sigma):
            raise ValueError("per-element item sets must share one capacity")
        self.n = len(sigma)
        self.q = q
        self.sigma = tuple(sigma)
        self.system = system
        self.volume = volume
        self.ground = ElementSet.full(self.n)
        by_item: list[ElementSet] = [self.ground]
        for i in range(1, q + 1):
            by_item.append(
                ElementSet.of(self.n, (v for v in range(self.n) if i in self.sigma[v]))
            )
        self._by_item = tuple(by_item)

    @classmethod
    def of_items(
        cls,
        items_per_element: Sequence[Iterable[int]],
        q: int,
        system: TransitiveSystemOracle,
        volume: VolumeFunction | None = None,
    ) -> "Instance":
        sigma = [ItemSet.of(q, items) for items in items_per_element]
        return cls(sigma, system, volume)

    def common_items(self, X: ElementSet) -> ItemSet:
        """Intersection of the item sets over the members of X."""
        if not X:
            raise ValueError("common items of the empty set are not defined here")
        mask = ItemSet.full(self.q).mask
        for v in X:
            mask &= self.sigma[v].mask
            if not mask:
                break
        return ItemSet(self.q, mask)

    def restrict_item(self, i: int) -> ElementSet:
        """Elements carrying item i; item 0 denotes the whole ground set."""
        if not 0 <= i <= self.q:
            raise ValueError(f"item {i} outside [0, {self.q}]")
        return self._by_item[i]

    def restrict_items(self, items: ItemSet | Iterable[int]) -> ElementSet:
        """Elements carrying every item in the collection (empty means all)."""
        mask = self.ground.mask
        for i in items:
            mask &= self.restrict_item(i).mask
        return ElementSet(self.n, mask)

    def unique_max_component(self, X: ElementSet, Y: ElementSet) -> ElementSet:
        """Maximal component between X and Y, or an empty set if none exists."""
        if not X:
            raise ValueError("X must be non-empty")
        if not X <= Y:
            raise ValueError("X must be contained in Y")
        return self.system.l1(X, Y)
