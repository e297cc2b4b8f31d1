"""Flat lattices of matroids: enumeration, order structure, geometricity.

``enumerate_lattice`` grows the lattice upward from the bottom flat by cover
generation instead of filtering all 2^n subsets, so it only pays for flats
that exist.  The input is any object exposing ``universe``, ``rank`` and
``closure`` with matroid semantics; that contract is what makes cover
generation correct.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Protocol

from .errors import (
    GuardExceeded,
    InternalConsistencyError,
    NotAFlatError,
    ValidationError,
)
from .universe import ElementSet, Universe, bits_of

DEFAULT_MAX_FLATS = 100_000
MAX_FLATS_ENV_VAR = "COVLAT_MAX_LATTICE_SIZE"


def default_max_flats() -> int:
    """Lattice size guard; overridable through the environment."""
    raw = os.environ.get(MAX_FLATS_ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_FLATS
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{MAX_FLATS_ENV_VAR} must be a positive integer") from None
    if value <= 0:
        raise ValidationError(f"{MAX_FLATS_ENV_VAR} must be a positive integer")
    return value


class MatroidOracle(Protocol):
    universe: Universe

    def rank(self, x: ElementSet) -> int: ...

    def closure(self, x: ElementSet) -> ElementSet: ...


@dataclass(frozen=True)
class GeometricityCheck:
    ok: bool
    violation: str | None = None


class FlatLattice:
    """All flats of a matroid with their Hasse diagram and heights.

    Flats are stored in canonical order (cardinality, then index sequence);
    heights are longest-chain distances from the bottom computed from the
    stored Hasse edges.  Instances are immutable after construction.
    """

    def __init__(self, flats: list[ElementSet], edges: list[tuple[int, int]]):
        if not flats:
            raise ValidationError("a lattice needs at least one flat")
        universe = flats[0].universe
        masks = [f.mask for f in flats]
        if len(set(masks)) != len(masks):
            raise ValidationError("duplicate flats")
        order = sorted(range(len(flats)), key=lambda i: flats[i].sort_key())
        remap = {old: new for new, old in enumerate(order)}
        self.universe = universe
        self.flats: tuple[ElementSet, ...] = tuple(flats[i] for i in order)
        self._index: dict[int, int] = {f.mask: i for i, f in enumerate(self.flats)}
        edge_set = set()
        for lower, upper in edges:
            lo, up = remap[lower], remap[upper]
            if not self.flats[lo] < self.flats[up]:
                raise ValidationError("hasse edge does not go strictly upward")
            edge_set.add((lo, up))
        self.hasse_edges: tuple[tuple[int, int], ...] = tuple(sorted(edge_set))
        self._edge_set = edge_set
        self.heights: tuple[int, ...] = self._longest_chain_heights()
        self.bottom = self.flats[0]
        self.top = self.flats[-1]
        if any(not self.bottom <= f for f in self.flats) or any(
            not f <= self.top for f in self.flats
        ):
            raise ValidationError("lattice lacks a unique bottom or top flat")

    def _longest_chain_heights(self) -> tuple[int, ...]:
        heights = [0] * len(self.flats)
        for lower, upper in sorted(self.hasse_edges, key=lambda e: self.flats[e[0]].sort_key()):
            if heights[upper] < heights[lower] + 1:
                heights[upper] = heights[lower] + 1
        return tuple(heights)

    def __len__(self) -> int:
        return len(self.flats)

    def index_of(self, flat: ElementSet) -> int:
        try:
            return self._index[flat.mask]
        except KeyError:
            raise NotAFlatError(f"{flat!r} is not a flat of this lattice") from None

    def is_flat(self, candidate: ElementSet) -> bool:
        return candidate.mask in self._index

    def height_of(self, flat: ElementSet) -> int:
        return self.heights[self.index_of(flat)]

    def meet(self, x: ElementSet, y: ElementSet) -> ElementSet:
        """Greatest lower bound: plain intersection, itself always a flat."""
        self.index_of(x)
        self.index_of(y)
        mask = x.mask & y.mask
        if mask not in self._index:
            raise InternalConsistencyError("intersection of flats is not a flat")
        return ElementSet(self.universe, mask)

    def join(self, x: ElementSet, y: ElementSet) -> ElementSet:
        """Least upper bound: the smallest flat containing the union."""
        self.index_of(x)
        self.index_of(y)
        return self._smallest_flat_over(x.mask | y.mask)

    def _smallest_flat_over(self, mask: int) -> ElementSet:
        found: ElementSet | None = None
        for flat in self.flats:
            if mask & ~flat.mask == 0:
                if found is None:
                    found = flat
                elif not found <= flat:
                    raise InternalConsistencyError("join is not unique; lattice corrupt")
        if found is None:
            raise InternalConsistencyError("no flat contains the union; lattice corrupt")
        return found

    def atoms(self) -> tuple[ElementSet, ...]:
        return tuple(f for f, h in zip(self.flats, self.heights) if h == 1)

    def covers(self, lower: ElementSet, upper: ElementSet) -> bool:
        """True iff (lower, upper) is a Hasse edge of the lattice."""
        return (self.index_of(lower), self.index_of(upper)) in self._edge_set

    def upper_covers(self, flat: ElementSet) -> tuple[ElementSet, ...]:
        i = self.index_of(flat)
        return tuple(self.flats[u] for l, u in self.hasse_edges if l == i)

    def lower_covers(self, flat: ElementSet) -> tuple[ElementSet, ...]:
        i = self.index_of(flat)
        return tuple(self.flats[l] for l, u in self.hasse_edges if u == i)

    def _true_covers(self) -> set[tuple[int, int]]:
        """Cover pairs recomputed from inclusion alone (ignoring stored edges)."""
        pairs: set[tuple[int, int]] = set()
        for i, flat in enumerate(self.flats):
            kept: list[int] = []
            for j, other in enumerate(self.flats):
                if other.mask != flat.mask and flat < other:
                    if any(self.flats[k] < other for k in kept):
                        continue
                    kept.append(j)
            pairs.update((i, j) for j in kept)
        return pairs

    def is_geometric(self) -> GeometricityCheck:
        """Jordan-Dedekind + semimodular inequality + atomistic, with diagnostics.

        The stored Hasse edges are first checked against the cover relation
        recomputed from inclusion, so a corrupted diagram is reported rather
        than silently graded.
        """
        true_covers = self._true_covers()
        stored = set(self.hasse_edges)
        if stored != true_covers:
            delta = stored.symmetric_difference(true_covers)
            lower, upper = sorted(delta)[0]
            return GeometricityCheck(
                False,
                f"hasse edges disagree with the cover relation near "
                f"{self.flats[lower]!r} -> {self.flats[upper]!r}",
            )
        for lower, upper in self.hasse_edges:
            if self.heights[upper] != self.heights[lower] + 1:
                return GeometricityCheck(
                    False,
                    f"chain condition fails on cover {self.flats[lower]!r} -> "
                    f"{self.flats[upper]!r}",
                )
        for i, x in enumerate(self.flats):
            for y in self.flats[i:]:
                meet_mask = x.mask & y.mask
                if meet_mask not in self._index:
                    return GeometricityCheck(
                        False, f"meet of {x!r} and {y!r} is not a flat"
                    )
                try:
                    join = self._smallest_flat_over(x.mask | y.mask)
                except InternalConsistencyError as exc:
                    return GeometricityCheck(False, str(exc))
                lhs = self.height_of(x) + self.height_of(y)
                rhs = self.heights[self._index[join.mask]] + self.heights[self._index[meet_mask]]
                if lhs < rhs:
                    return GeometricityCheck(
                        False, f"semimodular inequality fails on ({x!r}, {y!r})"
                    )
        atom_masks = [a.mask for a in self.atoms()]
        for flat in self.flats:
            below = 0
            for mask in atom_masks:
                if mask & ~flat.mask == 0:
                    below |= mask
            if self._smallest_flat_over(below).mask != flat.mask:
                return GeometricityCheck(False, f"{flat!r} is not a join of atoms")
        return GeometricityCheck(True)

    def to_json_dict(self) -> dict:
        return {
            "flats": [list(f.labels()) for f in self.flats],
            "edges": [list(e) for e in self.hasse_edges],
            "heights": list(self.heights),
        }

    def to_dot(self, name: str = "flats") -> str:
        def quote(label: str) -> str:
            return label.replace("\\", "\\\\").replace('"', '\\"')

        lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
        for i, flat in enumerate(self.flats):
            lines.append(f'  f{i} [label="{quote(repr(flat))}"];')
        by_height: dict[int, list[int]] = {}
        for i, h in enumerate(self.heights):
            by_height.setdefault(h, []).append(i)
        for h in sorted(by_height):
            members = " ".join(f"f{i};" for i in by_height[h])
            lines.append(f"  {{ rank=same; {members} }}")
        for lower, upper in self.hasse_edges:
            lines.append(f"  f{lower} -> f{upper};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_lattice(matroid: MatroidOracle, max_flats: int | None = None) -> FlatLattice:
    """Enumerate all flats of a matroid oracle by upward cover generation.

    The covers of a flat F are the minimal sets among the closures of
    one-element extensions of F.  Heights are asserted equal to ranks;
    a mismatch means the oracle is not a matroid and raises
    ``InternalConsistencyError``.
    """
    limit = default_max_flats() if max_flats is None else max_flats
    universe = matroid.universe
    bottom = matroid.closure(universe.empty())
    discovered: dict[int, int] = {bottom.mask: 0}
    order: list[ElementSet] = [bottom]
    edges: list[tuple[int, int]] = []
    queue: deque[ElementSet] = deque([bottom])
    while queue:
        flat = queue.popleft()
        if flat.mask == universe.full_mask:
            continue
        candidates: dict[int, ElementSet] = {}
        for e in bits_of(universe.full_mask & ~flat.mask):
            grown = matroid.closure(flat.with_index(e))
            candidates[grown.mask] = grown
        masks = list(candidates)
        for mask, cover in candidates.items():
            if any(other != mask and other & mask == other for other in masks):
                continue
            if mask not in discovered:
                if len(discovered) >= limit:
                    raise GuardExceeded(
                        f"flat lattice exceeds the guard of {limit} flats "
                        f"(at least {len(discovered) + 1} exist)"
                    )
                discovered[mask] = len(order)
                order.append(cover)
                queue.append(cover)
            edges.append((discovered[flat.mask], discovered[mask]))
    lattice = FlatLattice(order, edges)
    for flat, height in zip(lattice.flats, lattice.heights):
        if matroid.rank(flat) != height:
            raise InternalConsistencyError(
                f"height {height} of {flat!r} disagrees with rank {matroid.rank(flat)}"
            )
    return lattice


def is_modular_pair(
    lattice: FlatLattice, matroid: MatroidOracle, x: ElementSet, y: ElementSet
) -> bool:
    """Rank identity r(X u Y) + r(X n Y) = r(X) + r(Y) on two flats."""
    lattice.index_of(x)
    lattice.index_of(y)
    return matroid.rank(x | y) + matroid.rank(x & y) == matroid.rank(x) + matroid.rank(y)


def is_modular_element(lattice: FlatLattice, matroid: MatroidOracle, x: ElementSet) -> bool:
    """A flat that forms a modular pair with every flat of the lattice."""
    return all(is_modular_pair(lattice, matroid, x, y) for y in lattice.flats)


def modular_pair_by_heights(lattice: FlatLattice, x: ElementSet, y: ElementSet) -> bool:
    """Height identity h(x v y) + h(x ^ y) = h(x) + h(y); equivalent on
    semimodular lattices to the rank identity."""
    join = lattice.join(x, y)
    meet = lattice.meet(x, y)
    return lattice.height_of(join) + lattice.height_of(meet) == lattice.height_of(
        x
    ) + lattice.height_of(y)


def modular_pair_by_definition(lattice: FlatLattice, a: ElementSet, b: ElementSet) -> bool:
    """Order-theoretic modular pair: for every flat z <= b,
    b ^ (a v z) = (b ^ a) v z."""
    lattice.index_of(a)
    lattice.index_of(b)
    for z in lattice.flats:
        if not z <= b:
            continue
        left = lattice.meet(b, lattice.join(a, z))
        right = lattice.join(lattice.meet(b, a), z)
        if left != right:
            return False
    return True
