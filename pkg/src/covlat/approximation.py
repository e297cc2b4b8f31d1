"""Covering upper-approximation operators and the matroids they induce.

Three operators act on subsets of a covered universe:

* ``sh`` - block union: everything sharing a block with the argument,
* ``xh`` - neighborhood hit: elements whose neighborhood meets the argument,
* ``vh`` - neighborhood union: the union of all neighborhoods meeting it,

where the neighborhood N(x) is the intersection of the blocks containing x
and the indiscernible neighborhood I(x) is their union.  Each operator is a
matroidal closure operator exactly when its singleton images form a partition
of the universe; in that case the induced matroid is the partition matroid of
those images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterator, Sequence

from .errors import CriterionNotSatisfied, InternalConsistencyError, ValidationError
from .universe import Covering, ElementSet, Partition, Universe, bits_of


class UpperOperator(str, Enum):
    SH = "sh"
    XH = "xh"
    VH = "vh"


@dataclass(frozen=True)
class NeighborhoodTable:
    """Per-element I(x), N(x) and the inclusion-minimal blocks containing x."""

    covering: Covering
    indiscernible: tuple[ElementSet, ...]
    neighborhood: tuple[ElementSet, ...]
    minimal_description: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, covering: Covering) -> "NeighborhoodTable":
        universe = covering.universe
        indiscernible: list[ElementSet] = []
        neighborhood: list[ElementSet] = []
        minimal: list[tuple[int, ...]] = []
        for e in range(universe.n):
            containing = [j for j, block in enumerate(covering.blocks) if block.has_index(e)]
            i_mask = 0
            n_mask = universe.full_mask
            for j in containing:
                i_mask |= covering.blocks[j].mask
                n_mask &= covering.blocks[j].mask
            indiscernible.append(ElementSet(universe, i_mask))
            neighborhood.append(ElementSet(universe, n_mask))
            minimal.append(
                tuple(
                    j
                    for j in containing
                    if not any(
                        k != j and covering.blocks[k] < covering.blocks[j] for k in containing
                    )
                )
            )
        return cls(covering, tuple(indiscernible), tuple(neighborhood), tuple(minimal))

    def _check(self, x: ElementSet) -> None:
        if x.universe != self.covering.universe:
            raise ValidationError("set lives on a different universe")

    def sh(self, x: ElementSet) -> ElementSet:
        self._check(x)
        mask = 0
        for e in bits_of(x.mask):
            mask |= self.indiscernible[e].mask
        return ElementSet(self.covering.universe, mask)

    def xh(self, x: ElementSet) -> ElementSet:
        self._check(x)
        mask = 0
        for e in range(self.covering.universe.n):
            if self.neighborhood[e].mask & x.mask:
                mask |= 1 << e
        return ElementSet(self.covering.universe, mask)

    def vh(self, x: ElementSet) -> ElementSet:
        self._check(x)
        mask = 0
        for e in range(self.covering.universe.n):
            if self.neighborhood[e].mask & x.mask:
                mask |= self.neighborhood[e].mask
        return ElementSet(self.covering.universe, mask)

    def apply(self, kind: UpperOperator, x: ElementSet) -> ElementSet:
        if kind is UpperOperator.SH:
            return self.sh(x)
        if kind is UpperOperator.XH:
            return self.xh(x)
        return self.vh(x)

    def singleton_images(self, kind: UpperOperator) -> tuple[ElementSet, ...]:
        """The images of all singletons under the operator, one per element."""
        universe = self.covering.universe
        if kind is UpperOperator.SH:
            return self.indiscernible
        if kind is UpperOperator.XH:
            return self.neighborhood
        return tuple(self.vh(universe.singleton(e)) for e in range(universe.n))


def neighborhood_table(covering: Covering) -> NeighborhoodTable:
    return NeighborhoodTable.build(covering)


def apply_operator(covering: Covering, kind: UpperOperator, x: ElementSet) -> ElementSet:
    return NeighborhoodTable.build(covering).apply(kind, x)


def partition_upper(partition: Partition, x: ElementSet) -> ElementSet:
    """Union of the classes meeting x."""
    mask = 0
    for block in partition.blocks:
        if block.mask & x.mask:
            mask |= block.mask
    return ElementSet(partition.universe, mask)


def partition_lower(partition: Partition, x: ElementSet) -> ElementSet:
    """Union of the classes contained in x."""
    mask = 0
    for block in partition.blocks:
        if block.mask & ~x.mask == 0:
            mask |= block.mask
    return ElementSet(partition.universe, mask)


def forms_partition(sets: Sequence[ElementSet]) -> bool:
    """Whether the distinct sets in the collection are pairwise disjoint.

    Requires every set nonempty and every element covered, which all the
    singleton-image collections used here satisfy by construction.
    """
    if not sets:
        raise ValidationError("empty collection")
    universe = sets[0].universe
    union = 0
    for s in sets:
        if s.universe != universe:
            raise ValidationError("sets live on different universes")
        if not s:
            raise ValidationError("empty set in collection")
        union |= s.mask
    if union != universe.full_mask:
        raise ValidationError("collection does not cover the universe")
    distinct = set(s.mask for s in sets)
    return sum(m.bit_count() for m in distinct) == universe.n


def tra_condition(covering: Covering) -> bool:
    """Elements co-blocked through a common third element are co-blocked.

    Equivalent to the indiscernible neighborhoods forming a partition: x and
    z share a block exactly when x lies in I(z).
    """
    table = NeighborhoodTable.build(covering)
    for z in range(covering.universe.n):
        i_z = table.indiscernible[z].mask
        for x in bits_of(i_z):
            if i_z & ~table.indiscernible[x].mask:
                return False
    return True


def equ_condition(covering: Covering) -> bool:
    """Within every block, all members lie in equally many blocks."""
    counts = [0] * covering.universe.n
    for block in covering.blocks:
        for e in bits_of(block.mask):
            counts[e] += 1
    for block in covering.blocks:
        members = tuple(bits_of(block.mask))
        if any(counts[e] != counts[members[0]] for e in members):
            return False
    return True


@dataclass(frozen=True)
class AxiomWitness:
    """A concrete violation of the idempotence or exchange closure axiom."""

    law: str
    subset: ElementSet
    element: str | None = None
    partner: str | None = None

    def __str__(self) -> str:
        if self.law == "exchange":
            return (
                f"exchange fails at X={self.subset!r}, x={self.element}, y={self.partner}"
            )
        return f"{self.law} fails at X={self.subset!r}"


@dataclass(frozen=True)
class ClosureVerdict:
    operator: UpperOperator
    is_closure: bool
    classes: tuple[ElementSet, ...] | None
    witness: AxiomWitness | None


def _masks_by_size(universe: Universe, max_size: int) -> Iterator[int]:
    for size in range(0, max_size + 1):
        for combo in combinations(range(universe.n), size):
            mask = 0
            for e in combo:
                mask |= 1 << e
            yield mask


def _search_witness(table: NeighborhoodTable, kind: UpperOperator) -> AxiomWitness:
    """Find the first idempotence or exchange violation, subsets in size order.

    A violating covering always yields a singleton idempotence witness (sh,
    vh) or an exchange witness over the empty set (xh), so the bounded scan
    below is exhaustive in practice; a full sweep backs it up on small
    universes.
    """
    universe = table.covering.universe

    def idempotence_scan(limit: int) -> AxiomWitness | None:
        for mask in _masks_by_size(universe, limit):
            x = ElementSet(universe, mask)
            once = table.apply(kind, x)
            if table.apply(kind, once) != once:
                return AxiomWitness("idempotence", x)
        return None

    def exchange_scan(limit: int) -> AxiomWitness | None:
        for mask in _masks_by_size(universe, limit):
            x_set = ElementSet(universe, mask)
            image = table.apply(kind, x_set)
            for x in range(universe.n):
                grown = table.apply(kind, x_set.with_index(x))
                for y in bits_of(grown.mask & ~image.mask):
                    if not table.apply(kind, x_set.with_index(y)).has_index(x):
                        return AxiomWitness(
                            "exchange",
                            x_set,
                            universe.labels[x],
                            universe.labels[y],
                        )
        return None

    witness = idempotence_scan(min(universe.n, 2))
    if witness is None:
        witness = exchange_scan(min(universe.n, 1))
    if witness is None and universe.n <= 12:
        witness = idempotence_scan(universe.n)
        if witness is None:
            witness = exchange_scan(universe.n)
    if witness is None:
        raise InternalConsistencyError(
            "criterion failed but no axiom violation was found"
        )
    return witness


def closure_operator_verdict(covering: Covering, kind: UpperOperator) -> ClosureVerdict:
    """Decide whether the operator is a matroidal closure operator.

    The decision is the O(n^2) partition criterion on singleton images; a
    failing covering comes back with a concrete axiom violation as witness.
    """
    table = NeighborhoodTable.build(covering)
    images = table.singleton_images(kind)
    if forms_partition(images):
        distinct = sorted({s.mask: s for s in images}.values(), key=ElementSet.sort_key)
        return ClosureVerdict(kind, True, tuple(distinct), None)
    return ClosureVerdict(kind, False, None, _search_witness(table, kind))


def is_closure_operator(covering: Covering, kind: UpperOperator) -> bool:
    return closure_operator_verdict(covering, kind).is_closure


@dataclass(frozen=True)
class PartitionMatroidStats:
    base_count: int
    rank: int
    circuits: tuple[ElementSet, ...]


class PartitionMatroid:
    """Matroid of a partition: independent sets meet each class at most once.

    ``closure`` is computed from the rank function, so tests can compare it
    against the partition upper approximation through an independent route.
    """

    def __init__(self, universe: Universe, classes: Sequence[ElementSet]):
        classes = tuple(classes)
        union = 0
        total = 0
        for cls in classes:
            if cls.universe != universe:
                raise ValidationError("class lives on a different universe")
            if not cls:
                raise ValidationError("empty class")
            union |= cls.mask
            total += len(cls)
        if union != universe.full_mask or total != universe.n:
            raise ValidationError("classes must partition the universe")
        self.universe = universe
        self.classes = tuple(sorted(classes, key=ElementSet.sort_key))

    def _check(self, x: ElementSet) -> None:
        if x.universe != self.universe:
            raise ValidationError("set lives on a different universe")

    def is_independent(self, x: ElementSet) -> bool:
        self._check(x)
        return all((x.mask & cls.mask).bit_count() <= 1 for cls in self.classes)

    def is_dependent(self, x: ElementSet) -> bool:
        return not self.is_independent(x)

    def rank(self, x: ElementSet) -> int:
        """Number of classes the set meets."""
        self._check(x)
        return sum(1 for cls in self.classes if cls.mask & x.mask)

    def closure(self, x: ElementSet) -> ElementSet:
        self._check(x)
        r = self.rank(x)
        mask = x.mask
        for e in bits_of(self.universe.full_mask & ~x.mask):
            if self.rank(x.with_index(e)) == r:
                mask |= 1 << e
        return ElementSet(self.universe, mask)

    def base_count(self) -> int:
        """Bases pick one element per class, so the count is the product of
        class sizes."""
        return math.prod(len(cls) for cls in self.classes)

    def circuits(self) -> tuple[ElementSet, ...]:
        """All two-element subsets lying inside a single class."""
        found: list[ElementSet] = []
        for cls in self.classes:
            for a, b in combinations(cls.indices(), 2):
                found.append(ElementSet(self.universe, (1 << a) | (1 << b)))
        return tuple(sorted(found, key=ElementSet.sort_key))

    def stats(self) -> PartitionMatroidStats:
        return PartitionMatroidStats(self.base_count(), len(self.classes), self.circuits())


def operator_classes(covering: Covering, kind: UpperOperator) -> tuple[ElementSet, ...]:
    """Distinct singleton images of the operator, in canonical order."""
    images = NeighborhoodTable.build(covering).singleton_images(kind)
    return tuple(sorted({s.mask: s for s in images}.values(), key=ElementSet.sort_key))


def induced_partition_matroid(covering: Covering, kind: UpperOperator) -> PartitionMatroid:
    """The partition matroid of the operator's singleton images.

    Only defined when the operator is a matroidal closure operator; otherwise
    ``CriterionNotSatisfied`` carries the axiom violation.
    """
    verdict = closure_operator_verdict(covering, kind)
    if not verdict.is_closure:
        raise CriterionNotSatisfied(
            f"{kind.value} is not a closure operator here: {verdict.witness}"
        )
    assert verdict.classes is not None
    return PartitionMatroid(covering.universe, verdict.classes)
