"""Seed-deterministic random families, coverings and partitions.

Used by the verify command and by the test suites.  Coverings are produced
by patching every uncovered element into a randomly chosen block, so every
draw is valid by construction.
"""

from __future__ import annotations

import random

from .universe import (
    Covering,
    ElementSet,
    Partition,
    SetFamily,
    Universe,
    as_covering,
    as_partition,
)


def _fresh_universe(rng: random.Random, max_n: int, min_n: int = 1) -> Universe:
    n = rng.randint(min_n, max_n)
    return Universe(tuple(str(i + 1) for i in range(n)))


def random_family(rng: random.Random, max_n: int = 7, max_m: int = 7) -> SetFamily:
    universe = _fresh_universe(rng, max_n)
    m = rng.randint(1, max_m)
    blocks = [
        ElementSet(universe, rng.randint(1, universe.full_mask)) for _ in range(m)
    ]
    return SetFamily(universe, blocks)


def random_covering(rng: random.Random, max_n: int = 7, max_m: int = 7) -> Covering:
    family = random_family(rng, max_n, max_m)
    universe = family.universe
    blocks = [block.mask for block in family.blocks]
    for e in range(universe.n):
        if not any(mask >> e & 1 for mask in blocks):
            blocks[rng.randrange(len(blocks))] |= 1 << e
    return as_covering(
        SetFamily(universe, [ElementSet(universe, mask) for mask in blocks])
    )


def random_partition(rng: random.Random, max_n: int = 7, min_classes: int = 1) -> Partition:
    universe = _fresh_universe(rng, max_n, min_n=max(1, min_classes))
    indices = list(range(universe.n))
    rng.shuffle(indices)
    k = rng.randint(min_classes, universe.n)
    cuts = sorted(rng.sample(range(1, universe.n), k - 1)) if k > 1 else []
    blocks = []
    start = 0
    for cut in cuts + [universe.n]:
        mask = 0
        for e in indices[start:cut]:
            mask |= 1 << e
        blocks.append(ElementSet(universe, mask))
        start = cut
    return as_partition(SetFamily(universe, blocks))


def partition_with_nested_block(
    rng: random.Random, max_n: int = 6
) -> tuple[Covering, int]:
    """A partition plus one block strictly inside a class.

    The added block is immured and the block-union operator criterion still
    holds, which makes these coverings applicable instances for the
    immured-removal preservation checks.  Returns the covering and the
    index of the added block.
    """
    partition = random_partition(rng, max_n=max(2, max_n))
    while all(len(b) == 1 for b in partition.blocks):
        partition = random_partition(rng, max_n=max(2, max_n))
    host = rng.choice([b for b in partition.blocks if len(b) >= 2])
    members = list(host.indices())
    size = rng.randint(1, len(members) - 1)
    mask = 0
    for e in rng.sample(members, size):
        mask |= 1 << e
    blocks = list(partition.blocks) + [ElementSet(partition.universe, mask)]
    covering = as_covering(SetFamily(partition.universe, blocks))
    return covering, covering.m - 1


def partition_with_union_block(
    rng: random.Random, max_n: int = 6
) -> tuple[Covering, int]:
    """A partition plus one block equal to a union of two or more classes.

    The added block is reducible and leaves every neighborhood unchanged, so
    these coverings are applicable instances for the reducible-removal
    preservation checks.  Returns the covering and the index of the added
    block.
    """
    partition = random_partition(rng, max_n=max(2, max_n), min_classes=2)
    count = rng.randint(2, len(partition.blocks))
    chosen = rng.sample(list(partition.blocks), count)
    mask = 0
    for block in chosen:
        mask |= block.mask
    blocks = list(partition.blocks) + [ElementSet(partition.universe, mask)]
    covering = as_covering(SetFamily(partition.universe, blocks))
    return covering, covering.m - 1
