import pytest
from hypothesis import given
from hypothesis import strategies as st

from covlat import (
    GuardExceeded,
    TransversalMatroid,
    ab_decomposition,
    brute_independent,
    is_partition,
)
from conftest import cov, fam, subsets
from strategies import coverings, families, family_and_two_subsets


class TestIndependence:
    def test_partial_transversal(self, family4):
        matroid = TransversalMatroid(family4)
        assert matroid.is_independent(family4.universe.subset(["2", "4"]))
        assert matroid.is_independent(family4.universe.subset(["2", "3", "4"]))

    def test_empty_always_independent(self, mixed5):
        assert TransversalMatroid(mixed5).is_independent(mixed5.universe.empty())

    def test_five_elements_four_blocks_dependent(self, doubled9):
        matroid = TransversalMatroid(doubled9)
        assert not matroid.is_independent(doubled9.universe.subset(list("acfgi")))

    @given(families(max_n=5, max_m=5))
    def test_agrees_with_backtracking_oracle(self, family):
        matroid = TransversalMatroid(family)
        for x in subsets(family.universe):
            assert matroid.is_independent(x) == brute_independent(family, x)


class TestRank:
    def test_mixed5_values(self, mixed5):
        matroid = TransversalMatroid(mixed5)
        assert matroid.rank(mixed5.universe.full()) == 4
        assert matroid.rank(mixed5.universe.empty()) == 0
        assert matroid.rank(mixed5.universe.subset(["4", "5"])) == 1

    @given(family_and_two_subsets())
    def test_rank_axioms(self, data):
        family, x, y = data
        matroid = TransversalMatroid(family)
        assert 0 <= matroid.rank(x) <= len(x)
        assert matroid.rank(x & y) <= matroid.rank(x)
        assert (
            matroid.rank(x | y) + matroid.rank(x & y)
            <= matroid.rank(x) + matroid.rank(y)
        )

    @given(family_and_two_subsets(max_n=5))
    def test_augmentation(self, data):
        family, a, b = data
        matroid = TransversalMatroid(family)
        small = max(
            (s for s in subsets(family.universe) if s <= a and matroid.is_independent(s)),
            key=len,
        )
        big = max(
            (s for s in subsets(family.universe) if s <= b and matroid.is_independent(s)),
            key=len,
        )
        if len(small) < len(big):
            assert any(
                matroid.is_independent(small.with_index(e))
                for e in (big - small).indices()
            )


class TestClosure:
    def test_doubled9_golden(self, doubled9):
        matroid = TransversalMatroid(doubled9)
        closure = matroid.closure(doubled9.universe.subset(["a", "b", "i"]))
        assert closure == doubled9.universe.subset(["a", "b", "c", "d", "e", "i"])

    def test_parallel_pair_closure(self, mixed5):
        matroid = TransversalMatroid(mixed5)
        assert matroid.closure(mixed5.universe.subset(["4"])) == mixed5.universe.subset(
            ["4", "5"]
        )

    def test_closure_of_empty_iff_covering(self, mixed5, family4):
        assert not TransversalMatroid(mixed5).closure_of_empty()
        assert TransversalMatroid(family4).closure_of_empty() == family4.universe.subset(["1"])
        partition = cov("universe: a b\nblock: a\nblock: b")
        assert not TransversalMatroid(partition).closure_of_empty()

    @given(families())
    def test_closure_of_empty_characterizes_coverings(self, family):
        matroid = TransversalMatroid(family)
        assert (not matroid.closure_of_empty()) == family.covers_universe()

    @given(family_and_two_subsets(max_n=5))
    def test_closure_axioms(self, data):
        family, x, y = data
        matroid = TransversalMatroid(family)
        cx = matroid.closure(x)
        assert x <= cx
        if x <= y:
            assert cx <= matroid.closure(y)
        assert matroid.closure(cx) == cx
        universe = family.universe
        for a in range(universe.n):
            grown = matroid.closure(x.with_index(a))
            for b in (grown - cx).indices():
                assert matroid.closure(x.with_index(b)).has_index(a)


class TestEnumeration:
    def test_bases_of_partition(self):
        covering = cov("universe: 1 2 3\nblock: 1 2\nblock: 3")
        bases = TransversalMatroid(covering).bases()
        assert {b.labels() for b in bases} == {("1", "3"), ("2", "3")}

    def test_single_block_universe(self):
        covering = cov("universe: a\nblock: a")
        assert TransversalMatroid(covering).bases() == (covering.universe.full(),)

    def test_full_transversal(self):
        family = fam("universe: 2 3 4\nblock: 2 3\nblock: 4\nblock: 2 4")
        bases = TransversalMatroid(family).bases()
        assert [b.labels() for b in bases] == [("2", "3", "4")]

    def test_circuits(self, mixed5):
        circuits = TransversalMatroid(mixed5).circuits()
        assert [c.labels() for c in circuits] == [("4", "5")]

    def test_free_matroid_has_no_circuits(self):
        covering = cov("universe: 1 2\nblock: 1\nblock: 2")
        assert TransversalMatroid(covering).circuits() == ()

    def test_single_block_pair_is_a_circuit(self):
        family = fam("universe: 1 2\nblock: 1 2")
        circuits = TransversalMatroid(family).circuits()
        assert [c.labels() for c in circuits] == [("1", "2")]

    def test_guard(self, mixed5):
        matroid = TransversalMatroid(mixed5)
        with pytest.raises(GuardExceeded):
            matroid.bases(guard=4)
        with pytest.raises(GuardExceeded):
            matroid.circuits(guard=4)


class TestParallelAndSimple:
    def test_mixed5_parallel_class(self, mixed5):
        loops, classes = TransversalMatroid(mixed5).parallel_classes()
        assert not loops
        assert [c.labels() for c in classes] == [("4", "5")]

    def test_partition_of_singletons(self):
        covering = cov("universe: 1 2 3\nblock: 1\nblock: 2\nblock: 3")
        loops, classes = TransversalMatroid(covering).parallel_classes()
        assert not loops and classes == ()

    def test_single_block_cover(self):
        covering = cov("universe: 1 2\nblock: 1 2")
        loops, classes = TransversalMatroid(covering).parallel_classes()
        assert not loops
        assert [c.labels() for c in classes] == [("1", "2")]

    def test_simplicity(self, mixed5):
        assert not TransversalMatroid(mixed5).is_simple()
        assert TransversalMatroid(cov("universe: 1 2 3\nblock: 1 2\nblock: 2 3")).is_simple()
        assert not TransversalMatroid(cov("universe: 1 2\nblock: 1 2")).is_simple()

    @given(coverings(max_n=5))
    def test_simplicity_criterion_consistent(self, covering):
        # is_simple raises InternalConsistencyError if the block-difference
        # criterion ever disagrees with the direct loop/parallel test.
        TransversalMatroid(covering).is_simple()

    @given(coverings(max_n=5))
    def test_large_private_parts_are_parallel_classes(self, covering):
        matroid = TransversalMatroid(covering)
        for part in ab_decomposition(covering).a_parts:
            members = part.indices()
            if len(members) < 2:
                continue
            for a in members:
                for b in members:
                    if a < b:
                        pair = covering.universe.set_from_mask((1 << a) | (1 << b))
                        assert not matroid.is_independent(pair)


class TestABDecomposition:
    def test_mixed5(self, mixed5):
        decomposition = ab_decomposition(mixed5)
        assert [a.labels() for a in decomposition.a_parts] == [("4", "5")]
        assert decomposition.b_part.labels() == ("1", "2", "3")

    def test_partition_has_empty_b(self):
        covering = cov("universe: 1 2 3\nblock: 1 2\nblock: 3")
        decomposition = ab_decomposition(covering)
        assert tuple(a.mask for a in decomposition.a_parts) == tuple(
            b.mask for b in covering.blocks
        )
        assert not decomposition.b_part

    def test_doubled9_has_empty_a(self, doubled9):
        decomposition = ab_decomposition(doubled9)
        assert decomposition.a_parts == ()
        assert decomposition.b_part == doubled9.universe.full()

    @given(coverings())
    def test_parts_partition_the_universe(self, covering):
        decomposition = ab_decomposition(covering)
        masks = [a.mask for a in decomposition.a_parts] + [decomposition.b_part.mask]
        union = 0
        total = 0
        for mask in masks:
            union |= mask
            total += mask.bit_count()
        assert union == covering.universe.full_mask
        assert total == covering.universe.n

    @given(coverings())
    def test_b_empty_iff_partition(self, covering):
        assert (not ab_decomposition(covering).b_part) == is_partition(covering)


@given(families(max_n=5, max_m=4), st.integers())
def test_rank_cache_is_transparent(family, seed):
    cached = TransversalMatroid(family)
    for x in subsets(family.universe):
        fresh = TransversalMatroid(family)
        assert cached.rank(x) == fresh.rank(x)
        assert cached.rank(x) == fresh.rank(x)
