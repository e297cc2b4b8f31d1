"""Matroids induced by intersection-closed set lattices with submodular weights.

Given a family of sets closed under intersection that contains the empty set
and the universe, together with a non-negative integer submodular function f
vanishing on the empty set, the sets X with f(T) >= |X n T| for every member
T are the independent sets of a matroid.  Applied to the flat lattice of a
matroid with f = rank, this reconstructs the original matroid, and the
induced rank has the closed form min over members Y of f(Y) + |X - Y|.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import InternalConsistencyError, ValidationError
from .lattice import FlatLattice, MatroidOracle, enumerate_lattice
from .universe import ElementSet, Universe, bits_of

_SUBMODULARITY_SAMPLE = 4000


class SubmodularSystem:
    """Intersection-closed set family with a submodular integer weight."""

    def __init__(self, universe: Universe, sets: Sequence[ElementSet], values: dict[int, int]):
        sets = tuple(sorted(sets, key=ElementSet.sort_key))
        masks = {s.mask for s in sets}
        if len(masks) != len(sets):
            raise ValidationError("duplicate sets")
        if 0 not in masks or universe.full_mask not in masks:
            raise ValidationError("the system must contain the empty set and the universe")
        for s in sets:
            if s.universe != universe:
                raise ValidationError("set lives on a different universe")
            if s.mask not in values:
                raise ValidationError(f"no value for {s!r}")
            v = values[s.mask]
            if not isinstance(v, int) or v < 0:
                raise ValidationError(f"value of {s!r} must be a non-negative integer")
        if values[0] != 0:
            raise ValidationError("the empty set must have value 0")
        self.universe = universe
        self.sets = sets
        self._values = dict(values)
        self._validate_closure_and_submodularity()

    def _validate_closure_and_submodularity(self) -> None:
        masks = {s.mask for s in self.sets}
        pairs: list[tuple[ElementSet, ElementSet]] = [
            (x, y) for i, x in enumerate(self.sets) for y in self.sets[i + 1 :]
        ]
        if len(pairs) > _SUBMODULARITY_SAMPLE:
            rng = random.Random(0)
            pairs = rng.sample(pairs, _SUBMODULARITY_SAMPLE)
        for x, y in pairs:
            meet = x.mask & y.mask
            if meet not in masks:
                raise ValidationError(f"not intersection-closed: {x!r} n {y!r} missing")
            join = self._smallest_over(x.mask | y.mask)
            if self._values[join] + self._values[meet] > self._values[x.mask] + self._values[y.mask]:
                raise ValidationError(f"not submodular on ({x!r}, {y!r})")

    def _smallest_over(self, mask: int) -> int:
        for s in self.sets:
            if mask & ~s.mask == 0:
                return s.mask
        raise InternalConsistencyError("no member contains the union")

    def f(self, member: ElementSet) -> int:
        try:
            return self._values[member.mask]
        except KeyError:
            raise ValidationError(f"{member!r} is not a member of the system") from None

    @classmethod
    def from_flat_lattice(cls, lattice: FlatLattice) -> "SubmodularSystem":
        """Flats weighted by their heights (equal to ranks)."""
        values = {f.mask: h for f, h in zip(lattice.flats, lattice.heights)}
        return cls(lattice.universe, lattice.flats, values)


def independence_from_lattice(system: SubmodularSystem, x: ElementSet) -> bool:
    """Whether f(T) >= |x n T| for every member T."""
    if x.universe != system.universe:
        raise ValidationError("set lives on a different universe")
    return all(
        system.f(t) >= (x.mask & t.mask).bit_count() for t in system.sets
    )


class LatticeInducedMatroid:
    """Matroid oracle wrapping the lattice-bound independence predicate.

    Nothing is materialized: rank is computed greedily from the predicate,
    which is valid because the predicate satisfies the matroid axioms.
    """

    def __init__(self, system: SubmodularSystem):
        self.system = system
        self.universe = system.universe

    def is_independent(self, x: ElementSet) -> bool:
        return independence_from_lattice(self.system, x)

    def rank(self, x: ElementSet) -> int:
        current = self.universe.empty()
        for e in bits_of(x.mask):
            grown = current.with_index(e)
            if self.is_independent(grown):
                current = grown
        return len(current)

    def closure(self, x: ElementSet) -> ElementSet:
        r = self.rank(x)
        mask = x.mask
        for e in bits_of(self.universe.full_mask & ~x.mask):
            if self.rank(x.with_index(e)) == r:
                mask |= 1 << e
        return ElementSet(self.universe, mask)


def matroid_from_lattice(system: SubmodularSystem) -> LatticeInducedMatroid:
    return LatticeInducedMatroid(system)


def induced_rank(system: SubmodularSystem, x: ElementSet) -> int:
    """min over members Y of f(Y) + |x - Y|, cross-checked against the
    greedy rank of the induced matroid."""
    if x.universe != system.universe:
        raise ValidationError("set lives on a different universe")
    best = min(system.f(y) + (x.mask & ~y.mask).bit_count() for y in system.sets)
    greedy = LatticeInducedMatroid(system).rank(x)
    if best != greedy:
        raise InternalConsistencyError(
            f"induced rank {best} of {x!r} disagrees with the matroid rank {greedy}"
        )
    return best


def independent_iff_flat_bound(
    matroid: MatroidOracle,
    x: ElementSet,
    flats: Sequence[ElementSet] | None = None,
) -> bool:
    """Independence via the flat bound: rank(Y) >= |x n Y| for every flat Y."""
    if flats is None:
        flats = enumerate_lattice(matroid).flats
    return all(matroid.rank(y) >= (x.mask & y.mask).bit_count() for y in flats)
