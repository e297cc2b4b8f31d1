import pytest
from hypothesis import given

from covlat import (
    BruteForce,
    GuardExceeded,
    OracleBudget,
    TransversalMatroid,
    UpperOperator,
    brute_flats,
    brute_independent,
    brute_operator_axioms,
)
from conftest import cov, fam, subsets
from strategies import families, partitions


class TestBruteIndependent:
    def test_full_transversal(self, family4):
        assert brute_independent(family4, family4.universe.subset(["2", "3", "4"]))

    def test_empty_set(self, family4):
        assert brute_independent(family4, family4.universe.empty())

    def test_single_block_pair(self):
        family = fam("universe: 1 2\nblock: 1 2")
        assert not brute_independent(family, family.universe.full())

    @given(families(max_n=5, max_m=5))
    def test_table_matches_single_shot_search(self, family):
        table = BruteForce(family)
        for x in subsets(family.universe):
            assert table.independent(x) == brute_independent(family, x)


class TestBruteFlats:
    def test_mixed5_has_sixteen(self, mixed5):
        assert len(brute_flats(mixed5)) == 16

    def test_free_family_gives_powerset(self, family3):
        assert len(brute_flats(family3)) == 8

    def test_singleton(self):
        assert len(brute_flats(cov("universe: a\nblock: a"))) == 2


class TestBruteOperatorAxioms:
    def test_nested3_sh_passes(self, nested3):
        holds, witness = brute_operator_axioms(nested3, UpperOperator.SH)
        assert holds and witness is None

    def test_reduced_nested3_fails_with_idempotence_witness(self):
        shrunk = cov("universe: 1 2 3\nblock: 1 2\nblock: 1 3")
        holds, witness = brute_operator_axioms(shrunk, UpperOperator.SH)
        assert not holds
        assert witness is not None
        assert witness.law == "idempotence"
        assert witness.subset == shrunk.universe.subset(["2"])

    @given(partitions(max_n=5))
    def test_partitions_pass_every_operator(self, partition):
        for kind in UpperOperator:
            holds, _ = brute_operator_axioms(partition, kind)
            assert holds


class TestBudget:
    def test_large_universe_refused(self):
        labels = " ".join(str(i) for i in range(1, 9))
        family = fam(f"universe: {labels}\nblock: {labels}")
        with pytest.raises(GuardExceeded):
            brute_independent(family, family.universe.empty())
        with pytest.raises(GuardExceeded):
            BruteForce(family)

    def test_custom_budget(self, mixed5):
        tight = OracleBudget(max_universe=3)
        with pytest.raises(GuardExceeded):
            BruteForce(mixed5, tight)
        roomy = OracleBudget(max_universe=10, max_subsets=1 << 11)
        assert BruteForce(mixed5, roomy).rank(mixed5.universe.full()) == 4


@given(families(max_n=5, max_m=5))
def test_oracle_agrees_with_matroid_everywhere(family):
    oracle = BruteForce(family)
    matroid = TransversalMatroid(family)
    for x in subsets(family.universe):
        assert oracle.independent(x) == matroid.is_independent(x)
        assert oracle.rank(x) == matroid.rank(x)
        assert oracle.closure(x) == matroid.closure(x)
