"""Reducible and immured blocks of a covering, reducts and exclusions.

A block is reducible when it equals a union of other blocks, and immured
when it is strictly contained in another block.  ``reduct`` removes reducible
blocks one at a time, rescanning after each removal; ``exclusion`` removes
every block that is immured in the original covering in a single pass.  Both
results still cover the universe.
"""

from __future__ import annotations

from dataclasses import dataclass

from .universe import Covering


def reducible_block_indices(covering: Covering) -> tuple[int, ...]:
    return tuple(
        i for i in range(covering.m) if _reducible_in(covering.blocks, i)
    )


def _reducible_in(blocks, i: int) -> bool:
    target = blocks[i].mask
    union = 0
    for j, other in enumerate(blocks):
        if j != i and other.mask & ~target == 0:
            union |= other.mask
    return union == target


def immured_block_indices(covering: Covering) -> tuple[int, ...]:
    return tuple(
        i
        for i, block in enumerate(covering.blocks)
        if any(block < other for j, other in enumerate(covering.blocks) if j != i)
    )


def reduct(covering: Covering) -> Covering:
    """Remove reducible blocks until none remain.

    Removal rescans from the lowest index after every deletion; the fixpoint
    is independent of the removal order, which the test suite checks against
    alternative orders.
    """
    blocks = list(covering.blocks)
    names = list(covering.names)
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            if _reducible_in(blocks, i):
                del blocks[i]
                del names[i]
                changed = True
                break
    return Covering(covering.universe, blocks, names)


def exclusion(covering: Covering) -> Covering:
    """Remove, in one pass, every block strictly contained in another block."""
    immured = set(immured_block_indices(covering))
    blocks = [b for i, b in enumerate(covering.blocks) if i not in immured]
    names = [n for i, n in enumerate(covering.names) if i not in immured]
    return Covering(covering.universe, blocks, names)


@dataclass(frozen=True)
class ReductionReport:
    """Block diagnostics for one covering; indices refer to the original
    block order."""

    reducible_blocks: tuple[int, ...]
    immured_blocks: tuple[int, ...]
    reduct: Covering
    exclusion: Covering


def reduction_report(covering: Covering) -> ReductionReport:
    return ReductionReport(
        reducible_block_indices(covering),
        immured_block_indices(covering),
        reduct(covering),
        exclusion(covering),
    )
