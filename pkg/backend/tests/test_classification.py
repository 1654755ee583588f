"""Tests for symbols, class sizes, class enumeration and Burnside counts."""

import pytest

from classification import (
    class_of,
    class_size_factors,
    count_classes_burnside,
    e_factor,
    enumerate_classes,
    exhaustive_symbol_counts,
    generalized_symbol,
    is_palindrome,
    representative_for_symbol,
    symbol3,
    symbol_class_size,
    valid_symbols,
)
from errors import (
    CapacityError,
    HandSizeError,
    InvalidSymbolError,
    UnsupportedSpecError,
)
from hand_parser import HandParser
from isomorphism import automorphism_count, orbit_size
from models import DeckSpec, Symbol3

# Class sizes of three-card hands of D(3^4), keyed by symbol text
THREE_CARD_SIZES = {
    "(0;0,0,0)": 216,
    "(0;0,0,1)": 2592,
    "(0;0,0,2)": 3888,
    "(0;0,0,3)": 2592,
    "(0;0,1,1)": 7776,
    "(0;0,1,2)": 15552,
    "(0;0,1,3)": 5184,
    "(0;0,2,2)": 3888,
    "(0;1,1,1)": 5184,
    "(0;1,1,2)": 7776,
    "(1;0,0,0)": 432,
    "(1;0,0,1)": 3888,
    "(1;0,0,2)": 3888,
    "(1;0,1,1)": 7776,
    "(1;0,1,2)": 7776,
    "(1;1,1,1)": 2592,
    "(2;0,0,0)": 324,
    "(2;0,0,1)": 1944,
    "(2;0,1,1)": 1944,
    "(3;0,0,0)": 108,
}


def symbol(text: str) -> Symbol3:
    t, parts = text.strip("()").split(";")
    return Symbol3(t=int(t), parts=tuple(int(p) for p in parts.split(",")))


# ── Symbols ──────────────────────────────────────────────────────────────

class TestSymbols:

    def test_symbol_of_a_set_with_nothing_shared(self, hand):
        assert str(symbol3(hand("0000 1111 2222"))) == "(0;0,0,0)"

    def test_symbol_of_a_set_sharing_three(self, hand):
        assert str(symbol3(hand("0000 0001 0002"))) == "(3;0,0,0)"

    def test_parts_are_sorted(self, hand):
        # pairs share 1, 0 and 1 attributes beyond the two common to all
        assert str(symbol3(hand("0000 0001 0011"))) == "(2;0,1,1)"

    def test_symbol_needs_three_cards(self, hand):
        with pytest.raises(HandSizeError):
            symbol3(hand("0000 1111"))

    def test_symbol3_is_for_the_standard_deck(self):
        h = HandParser(DeckSpec(k=3, d=5)).parse_hand("00000 11111 22222")
        with pytest.raises(UnsupportedSpecError):
            symbol3(h)
        assert str(generalized_symbol(h)) == "(0;0,0,0)"

    def test_twenty_valid_symbols(self):
        symbols = valid_symbols()
        assert len(symbols) == 20
        assert {str(s) for s in symbols} == set(THREE_CARD_SIZES)

    def test_invalid_symbol(self):
        with pytest.raises(InvalidSymbolError):
            symbol_class_size(Symbol3(t=3, parts=(0, 0, 1)))

    def test_e_factor(self):
        assert e_factor(symbol("(0;0,0,0)")) == 6
        assert e_factor(symbol("(0;0,1,1)")) == 2
        assert e_factor(symbol("(1;0,1,2)")) == 1


# ── Class sizes ──────────────────────────────────────────────────────────

class TestClassSizes:

    def test_factors_of_the_largest_set_class(self):
        factors = class_size_factors(symbol("(0;0,0,0)"))
        assert (factors.a, factors.b, factors.c, factors.d, factors.e) == (
            1,
            81,
            16,
            1,
            6,
        )
        assert factors.size == 216

    def test_every_symbol_size(self):
        for text, size in THREE_CARD_SIZES.items():
            assert symbol_class_size(symbol(text)) == size, text

    def test_sizes_sum_to_all_triples(self):
        assert sum(symbol_class_size(s) for s in valid_symbols()) == 85320

    def test_formula_orbit_and_exhaustive_counts_agree(self):
        exhaustive = exhaustive_symbol_counts()
        for s in valid_symbols():
            rep = representative_for_symbol(s)
            assert symbol3(rep) == s
            assert symbol_class_size(s) == orbit_size(rep) == exhaustive[s]

    def test_automorphisms_follow_the_e_rule(self):
        for s in valid_symbols():
            assert automorphism_count(representative_for_symbol(s)) == e_factor(s)

    def test_set_classes(self):
        sets = [symbol_class_size(Symbol3(t=t, parts=(0, 0, 0))) for t in range(4)]
        assert sets == [216, 432, 324, 108]
        assert sum(sets) == 1080

    def test_stun_classes(self):
        classes = ("(0;0,1,3)", "(0;0,2,2)", "(0;1,1,2)")
        stuns = [symbol_class_size(symbol(s)) for s in classes]
        assert stuns == [5184, 3888, 7776]
        assert sum(stuns) == 16848

    def test_class_of(self, hand):
        record = class_of(hand("0000 1111 2222"))
        assert record.size == 216
        assert record.automorphisms == 6
        assert str(record.symbol) == "(0;0,0,0)"
        assert record.line.startswith("symbol=(0;0,0,0) rep=")

    def test_class_of_four_cards_has_no_symbol(self, hand):
        record = class_of(hand("1000 0100 0010 0001"))
        assert record.symbol is None
        assert record.automorphisms == 24


# ── Class enumeration ────────────────────────────────────────────────────

class TestEnumerateClasses:

    def test_small_hands(self, standard_spec):
        assert [len(enumerate_classes(standard_spec, n)) for n in range(2)] == [1, 1]

    def test_two_card_classes(self, standard_spec):
        records = enumerate_classes(standard_spec, 2)
        assert sorted(r.size for r in records) == [324, 648, 972, 1296]
        assert sum(r.size for r in records) == 3240

    def test_three_card_classes(self, standard_spec):
        records = enumerate_classes(standard_spec, 3)
        assert len(records) == 20
        assert {str(r.symbol): r.size for r in records} == THREE_CARD_SIZES
        assert [str(r.symbol) for r in records] == sorted(THREE_CARD_SIZES)

    def test_four_card_classes(self, standard_spec):
        records = enumerate_classes(standard_spec, 4)
        assert len(records) == 144
        assert sum(r.size for r in records) == 1663740

    def test_scan_and_augment_agree(self):
        spec = DeckSpec(k=3, d=2)
        for n in range(10):
            scan = enumerate_classes(spec, n, strategy="scan")
            augment = enumerate_classes(spec, n, strategy="augment")
            assert scan == augment

    def test_complements_mirror_small_hands(self):
        spec = DeckSpec(k=3, d=2)
        for n in range(10):
            sizes = sorted(r.size for r in enumerate_classes(spec, n))
            assert sizes == sorted(r.size for r in enumerate_classes(spec, 9 - n))

    def test_hand_size_out_of_range(self, standard_spec):
        with pytest.raises(HandSizeError):
            enumerate_classes(standard_spec, 82)

    def test_capacity(self, standard_spec):
        with pytest.raises(CapacityError):
            enumerate_classes(standard_spec, 3, subset_cap=10, augment_max_n=2)

    def test_scan_refused_beyond_subset_cap(self, standard_spec):
        with pytest.raises(CapacityError):
            enumerate_classes(standard_spec, 3, strategy="scan", subset_cap=10)


# ── Burnside counting ────────────────────────────────────────────────────

class TestBurnside:

    def test_square_deck(self):
        assert count_classes_burnside(DeckSpec(k=2, d=2)) == [1, 1, 2, 1, 1]

    def test_standard_deck(self, standard_spec):
        counts = count_classes_burnside(standard_spec)
        assert len(counts) == 82
        assert counts[:5] == [1, 1, 4, 20, 144]
        assert is_palindrome(counts)

    def test_agrees_with_enumeration(self):
        spec = DeckSpec(k=3, d=2)
        counts = count_classes_burnside(spec)
        assert counts == [len(enumerate_classes(spec, n)) for n in range(10)]

    def test_max_n(self, standard_spec):
        assert count_classes_burnside(standard_spec, max_n=2) == [1, 1, 4]

    def test_is_palindrome(self):
        assert is_palindrome([1, 2, 1])
        assert not is_palindrome([1, 2])
