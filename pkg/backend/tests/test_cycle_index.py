"""Tests for cycle-type algebra and the wreath-product cycle index."""

import pytest

from classification import count_classes_burnside, count_classes_cycle_index
from cycle_index import (
    block_cycle_type,
    combine_cycle_types,
    cycle_index_counts,
    partition_class_size,
    subset_polynomial,
    wreath_cycle_types,
)
from models import DeckSpec


# ── Cycle-type algebra ───────────────────────────────────────────────────

class TestCycleTypeAlgebra:

    def test_subset_polynomial_of_fixed_points(self):
        assert subset_polynomial({1: 3}, 3) == [1, 3, 3, 1]

    def test_subset_polynomial_mixed_lengths(self):
        # (1 + x)(1 + x^2)
        assert subset_polynomial({1: 1, 2: 1}, 3) == [1, 1, 1, 1]

    def test_subset_polynomial_truncates(self):
        assert subset_polynomial({1: 5}, 2) == [1, 5, 10]

    def test_combine_cycle_types(self):
        assert combine_cycle_types({2: 1}, {2: 1}) == {2: 2}
        assert combine_cycle_types({2: 1}, {3: 1}) == {6: 1}
        assert combine_cycle_types({1: 3}, {1: 1, 2: 1}) == {1: 3, 2: 3}

    def test_partition_class_size(self):
        assert partition_class_size({1: 3}, 3) == 1
        assert partition_class_size({1: 1, 2: 1}, 3) == 3
        assert partition_class_size({3: 1}, 3) == 2

    def test_block_of_a_fixed_attribute(self):
        assert block_cycle_type(1, {1: 1, 2: 1}) == {1: 1, 2: 1}

    def test_block_of_swapped_attributes(self):
        """Swapping two attributes of a 3-value deck: 3 fixed pairs, 3 swapped."""
        assert block_cycle_type(2, {1: 3}) == {1: 3, 2: 3}

    def test_block_covers_every_digit_tuple(self):
        for length in (1, 2, 3):
            block = block_cycle_type(length, {3: 1})
            assert sum(ell * count for ell, count in block.items()) == 3**length


# ── Cycle index counts ───────────────────────────────────────────────────

class TestCycleIndex:

    @pytest.mark.parametrize("k,d", [(2, 2), (2, 3), (3, 2), (4, 2), (3, 3)])
    def test_weights_cover_the_group(self, k, d):
        spec = DeckSpec(k=k, d=d)
        assert sum(w for _, w in wreath_cycle_types(spec)) == spec.group_order

    @pytest.mark.parametrize("k,d", [(2, 2), (2, 3), (3, 2), (4, 2), (3, 3)])
    def test_agrees_with_element_wise_burnside(self, k, d):
        spec = DeckSpec(k=k, d=d)
        assert cycle_index_counts(spec) == count_classes_burnside(spec)

    def test_standard_deck(self, standard_spec):
        counts = count_classes_cycle_index(standard_spec)
        assert counts == count_classes_burnside(standard_spec)
        assert counts[:5] == [1, 1, 4, 20, 144]

    def test_max_n(self, standard_spec):
        assert count_classes_cycle_index(standard_spec, max_n=3) == [1, 1, 4, 20]

    def test_eleven_card_hands_of_a_large_deck(self):
        counts = count_classes_cycle_index(DeckSpec(k=4, d=9), max_n=11)
        assert len(counts) == 12
        assert f"{counts[11]:.2e}" == "1.08e+34"
