"""Tests for the Set, Stun and Quad predicates (predicates.py)."""

from itertools import combinations

import numpy as np
import pytest

from errors import HandSizeError, UnsupportedSpecError
from group import apply_to_hand, random_element
from hand_parser import HandParser
from models import DeckSpec, Hand
from predicates import count_rows, is_quad, is_set, is_stun, set_mask, stun_mask


@pytest.fixture
def quad_parser():
    return HandParser(DeckSpec(k=4, d=4))


class TestSetAndStun:

    def test_set(self, hand):
        assert is_set(hand("0000 1111 2222"))
        assert is_set(hand("0000 0001 0002"))
        assert not is_set(hand("0000 0001 0011"))

    def test_stun(self, hand):
        assert is_stun(hand("0000 0001 1110"))
        assert not is_stun(hand("0000 1111 2222"))
        assert not is_stun(hand("0000 0001 0011"))

    def test_no_triple_is_both(self, standard_spec):
        rows = np.asarray(list(combinations(range(81), 3))[:20000])
        both = set_mask(standard_spec, rows) & stun_mask(standard_spec, rows)
        assert not both.any()

    def test_wrong_hand_size(self, hand):
        with pytest.raises(HandSizeError):
            is_set(hand("0000 1111"))

    def test_needs_three_values(self, quad_parser):
        with pytest.raises(UnsupportedSpecError):
            is_set(quad_parser.parse_hand("0000 1111 2222"))

    def test_counts_over_the_deck(self, standard_spec):
        triples = combinations(range(81), 3)
        assert count_rows(set_mask, standard_spec, triples, batch=10000) == 1080
        triples = combinations(range(81), 3)
        assert count_rows(stun_mask, standard_spec, triples) == 16848


class TestQuad:

    def test_all_distinct(self, quad_parser):
        assert is_quad(quad_parser.parse_hand("0000 1111 2222 3333"))

    def test_two_and_two(self, quad_parser):
        assert is_quad(quad_parser.parse_hand("0000 0011 1100 1111"))

    def test_three_and_one(self, quad_parser):
        assert not is_quad(quad_parser.parse_hand("0000 0001 0002 0010"))

    def test_needs_four_values(self, hand):
        with pytest.raises(UnsupportedSpecError):
            is_quad(hand("0000 1111 2222 0001"))

    def test_quad_is_invariant(self, rng):
        spec = DeckSpec(k=4, d=2)
        for _ in range(500):
            g = random_element(spec, rng)
            quad = Hand.from_indices(spec, rng.sample(range(16), 4))
            assert is_quad(apply_to_hand(g, quad)) == is_quad(quad)
