"""Brute-force oracle: enumeration, counting, and differential agreement."""

import random

import pytest

from rccs import (
    BudgetExceeded,
    SearchBudget,
    enumerate_rccs,
    extend_with_rccs,
    restricted_growth_strings,
    stirling2,
    validate_partition,
    verify_by_enumeration,
    verify_rccs,
)
from conftest import random_correlated_pair, random_space


def _cell_sets(partition):
    return frozenset(frozenset(cell.members) for cell in partition.cells)


def test_stirling_small_values():
    assert stirling2(4, 2) == 7
    assert stirling2(8, 2) == 127
    assert stirling2(8, 3) == 966
    assert stirling2(5, 5) == 1
    assert stirling2(3, 5) == 0


def test_rgs_enumeration_count_matches_stirling():
    for k in range(2, 8):
        for n in range(1, k + 1):
            assert sum(1 for _ in restricted_growth_strings(k, n)) == stirling2(k, n)


def test_rgs_lexicographic_and_exact_blocks():
    codes = list(restricted_growth_strings(4, 2))
    assert codes == sorted(codes)
    assert all(max(code) == 1 for code in codes)
    assert len(codes) == 7


def test_s4_two_block_systems_are_the_marginal_splits(s4_pair):
    # Exhaustive truth over the 7 candidates: exactly the partitions
    # {A, complement} and {B, complement} qualify; cells aligned with an
    # event make it deterministic, so screening holds automatically and
    # co-monotonicity reduces to the positive correlation itself.
    space, a, b = s4_pair
    found = enumerate_rccs(space, a, b, 2)
    expected = {
        frozenset({frozenset({"w1", "w2"}), frozenset({"w3", "w4"})}),
        frozenset({frozenset({"w1", "w3"}), frozenset({"w2", "w4"})}),
    }
    assert {_cell_sets(p) for p in found} == expected
    for part in found:
        assert verify_rccs(space, a, b, part).verdict


def test_extension_enumeration_contains_constructed_system(s4_pair, canonical_star):
    space, a, b = s4_pair
    result = extend_with_rccs(space, a, b, canonical_star)
    image_a, image_b = result.image(a), result.image(b)
    found = enumerate_rccs(result.new_space, image_a, image_b, 2)
    assert _cell_sets(result.cells) in {_cell_sets(p) for p in found}


def test_enumeration_empty_when_blocks_exceed_atoms(s4_pair):
    space, a, b = s4_pair
    assert enumerate_rccs(space, a, b, 5) == []


def test_enumeration_result_passes_primary_verifier(s4_pair):
    space, a, b = s4_pair
    for part in enumerate_rccs(space, a, b, 2):
        assert verify_rccs(space, a, b, part).verdict
        assert verify_by_enumeration(space, a, b, part)


def test_budget_max_atoms():
    rng = random.Random(1)
    space = random_space(rng, max_atoms=6)
    a = space.event([space.labels[0]])
    with pytest.raises(BudgetExceeded):
        enumerate_rccs(space, a, a, 2, SearchBudget(max_atoms=2))


def test_budget_max_partition_size(s4_pair):
    space, a, b = s4_pair
    with pytest.raises(BudgetExceeded):
        enumerate_rccs(space, a, b, 3, SearchBudget(max_partition_size=2))


def test_budget_max_partitions(s4_pair):
    space, a, b = s4_pair
    with pytest.raises(BudgetExceeded):
        enumerate_rccs(space, a, b, 2, SearchBudget(max_partitions=3))


def test_oracle_handles_one_cell_partitions(s4_pair):
    space, a, b = s4_pair
    assert not verify_by_enumeration(space, a, b, validate_partition(space, [space.full]))


def test_oracle_counterexample_partition_is_rejected():
    from rccs import realize_counterexample

    config = realize_counterexample()
    assert not verify_by_enumeration(
        config.space, config.event_a, config.event_b, config.partition
    )


def test_differential_agreement_on_random_spaces():
    # the oracle recomputes everything from raw weight sums; it must agree
    # with the primary verifier on every partition of every small space
    rng = random.Random(777)
    compared = 0
    for _ in range(40):
        space = random_space(rng, max_atoms=6, allow_zero=True)
        pair = random_correlated_pair(rng, space, attempts=30)
        if pair is None:
            continue
        a, b = pair
        k = len(space.labels)
        for n in range(2, min(4, k) + 1):
            for code in restricted_growth_strings(k, n):
                cells = [set() for _ in range(n)]
                for label, idx in zip(space.labels, code):
                    cells[idx].add(label)
                part = validate_partition(space, [space.event(c) for c in cells])
                compared += 1
                assert (
                    verify_by_enumeration(space, a, b, part)
                    == verify_rccs(space, a, b, part).verdict
                )
    assert compared > 500
