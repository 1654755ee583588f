"""Tests for isomorphism, canonical forms, stabilizers and inducers (isomorphism.py)."""

import random

import pytest

from classification import (
    representative_for_symbol,
    symbol3,
    valid_symbols,
)
from deck import complement, make_deck
from errors import (
    AttributeRangeError,
    DegeneratePairError,
    MalformedMappingError,
)
from group import apply_element, apply_to_hand, identity, random_element
from isomorphism import (
    are_isomorphic,
    automorphism_count,
    automorphisms,
    canonical_form,
    common_attribute_count,
    distance_profile,
    distinguishing_invariant,
    find_witness,
    inducer_count,
    inducers,
    orbit_size,
    splitting_signature,
    splitting_signatures,
    stabilizer_order,
    validate_witness,
    witness_table,
)
from models import Hand
from predicates import is_set, is_stun


def random_hand(spec, rng: random.Random, size: int) -> Hand:
    return Hand.from_indices(spec, rng.sample(range(spec.deck_size), size))


# ── Cheap invariants ─────────────────────────────────────────────────────

class TestInvariants:

    def test_common_attribute_count(self, parser):
        x, y = parser.parse_card("0120"), parser.parse_card("0121")
        assert common_attribute_count(x, y) == 3

    def test_common_attribute_count_needs_two_cards(self, parser):
        x = parser.parse_card("0120")
        with pytest.raises(DegeneratePairError):
            common_attribute_count(x, x)

    def test_splitting_signature(self, hand):
        h = hand("0000 0001 0111 1111")
        assert splitting_signature(h, 0) == (3, 1)
        assert splitting_signature(h, 3) == (3, 1)
        assert splitting_signature(h, 1) == (2, 2)

    def test_splitting_signature_bad_attribute(self, hand):
        with pytest.raises(AttributeRangeError):
            splitting_signature(hand("0000"), 4)

    def test_distance_profile(self, hand):
        assert distance_profile(hand("0000 0001 0002")) == (3, 3, 3)

    def test_invariants_survive_the_group(self, standard_spec, hand, rng):
        h = hand("0000 0012 1201 2222 1111")
        image = apply_to_hand(random_element(standard_spec, rng), h)
        assert splitting_signatures(image) == splitting_signatures(h)
        assert distance_profile(image) == distance_profile(h)

    def test_distinguishing_invariant_reports_sizes(self, hand):
        reason = distinguishing_invariant(hand("0000"), hand("0000 1111"))
        assert reason == "hand sizes differ: 1 vs 2"

    def test_distinguishing_invariant_for_different_sets(self, hand):
        first, second = hand("0000 0111 0222"), hand("0000 0011 0022")
        reason = distinguishing_invariant(first, second)
        assert reason.startswith("splitting")


# ── Isomorphism and witnesses ────────────────────────────────────────────

class TestIsomorphism:

    def test_image_under_example_table(self, example_element, hand):
        h = hand("0000 1000 0120 2211")
        image = apply_to_hand(example_element, h)
        assert are_isomorphic(h, image)

    def test_witness_for_example_table(self, example_element, hand):
        h = hand("0000 1000 0120 2211")
        image = apply_to_hand(example_element, h)
        witness = find_witness(h, image)
        assert witness is not None
        assert validate_witness(witness)
        assert Hand.from_cards(h.spec, [y for _, y in witness.mapping]) == image

    def test_hand_with_itself_gives_identity(self, standard_spec, hand):
        h = hand("0000 1212 2101")
        witness = find_witness(h, h)
        assert witness.element == identity(standard_spec)

    def test_pruning_keeps_the_first_witness(self, standard_spec, hand, rng):
        h = hand("0000 0012 1201 2222")
        image = apply_to_hand(random_element(standard_spec, rng), h)
        pruned = find_witness(h, image, prune=True)
        full = find_witness(h, image, prune=False)
        assert pruned.element == full.element

    def test_sets_of_different_types(self, hand):
        assert not are_isomorphic(hand("0000 0111 0222"), hand("0000 0011 0022"))
        assert find_witness(hand("0000 0111 0222"), hand("0000 0011 0022")) is None

    def test_different_sizes(self, hand):
        assert not are_isomorphic(hand("0000 1111"), hand("0000 1111 2222"))

    def test_random_images_are_isomorphic(self, standard_spec, rng):
        for _ in range(20):
            h = random_hand(standard_spec, rng, rng.randint(1, 6))
            image = apply_to_hand(random_element(standard_spec, rng), h)
            assert are_isomorphic(h, image)
            assert validate_witness(find_witness(h, image))

    def test_witness_table_names_the_attributes(self, example_element):
        lines = witness_table(example_element)
        assert lines[:4] == [
            "COLOR => FILL",
            "  red -> solid",
            "  green -> empty",
            "  purple -> stripe",
        ]
        assert "SHAPE => COLOR" in lines
        assert "  diamond -> green" in lines
        assert "NUMBER => NUMBER" in lines
        assert "  single -> triple" in lines


# ── Canonical forms ──────────────────────────────────────────────────────

class TestCanonicalForm:

    def test_canonical_form_is_idempotent(self, hand):
        rep = canonical_form(hand("1021 2222 0110")).hand
        assert canonical_form(rep).hand == rep

    def test_single_card_canonical_form(self, hand):
        assert canonical_form(hand("2121")).hand.indices == (0,)

    def test_empty_hand(self, standard_spec):
        empty = Hand(spec=standard_spec)
        assert canonical_form(empty).hand == empty

    def test_canonical_form_is_least_image(self, standard_spec, hand):
        h = hand("0000 1111 2222")
        rep = canonical_form(h).hand
        images = {
            apply_to_hand(random_element(standard_spec, random.Random(s)), h).indices
            for s in range(50)
        }
        assert all(rep.indices <= image for image in images)


# ── Property suites ──────────────────────────────────────────────────────

class TestProperties:

    def test_symbol_decides_three_card_isomorphism(self, standard_spec, rng):
        """Same symbol exactly when same canonical form."""
        for _ in range(10_000):
            first = random_hand(standard_spec, rng, 3)
            second = random_hand(standard_spec, rng, 3)
            same_symbol = symbol3(first) == symbol3(second)
            same_class = canonical_form(first) == canonical_form(second)
            assert same_symbol == same_class

    def test_representatives_are_pairwise_distinct(self):
        reps = [representative_for_symbol(s) for s in valid_symbols()]
        canonical = {canonical_form(r) for r in reps}
        assert len(canonical) == 20
        for i, first in enumerate(reps):
            for second in reps[i + 1 :]:
                assert not are_isomorphic(first, second)

    def test_game_predicates_are_invariant(self, standard_spec, rng):
        for _ in range(1000):
            g = random_element(standard_spec, rng)
            triple = random_hand(standard_spec, rng, 3)
            image = apply_to_hand(g, triple)
            assert is_set(image) == is_set(triple)
            assert is_stun(image) == is_stun(triple)

    def test_canonical_form_is_invariant(self, standard_spec, rng):
        for _ in range(1000):
            g = random_element(standard_spec, rng)
            h = random_hand(standard_spec, rng, rng.randint(0, 5))
            assert canonical_form(apply_to_hand(g, h)) == canonical_form(h)


# ── Stabilizers, automorphisms, inducers ─────────────────────────────────

class TestStabilizers:

    def test_single_card_stabilizer(self, hand):
        assert stabilizer_order(hand("1201")) == 384
        assert orbit_size(hand("1201")) == 81

    def test_empty_hand_stabilizer_is_whole_group(self, standard_spec):
        empty = Hand(spec=standard_spec)
        assert stabilizer_order(empty) == 31104
        assert orbit_size(empty) == 1

    def test_three_shared_attributes(self, hand):
        h = hand("0000 0001 0002")
        assert stabilizer_order(h) == 288
        assert orbit_size(h) == 108
        assert automorphism_count(h) == 6

    def test_orbit_stabilizer(self, standard_spec, rng):
        for _ in range(5):
            h = random_hand(standard_spec, rng, 4)
            assert stabilizer_order(h) * orbit_size(h) == 31104

    def test_four_card_hand_with_every_automorphism(self, hand):
        h = hand("1000 0100 0010 0001")
        assert automorphism_count(h) == 24
        maps = automorphisms(h)
        assert len(maps) == 24
        assert all(set(m.values()) == set(h.cards) for m in maps)

    def test_empty_hand_has_one_automorphism(self, standard_spec):
        empty = Hand(spec=standard_spec)
        assert automorphism_count(empty) == 1
        assert automorphisms(empty) == [{}]

    def test_empty_map_is_induced_by_everything(self, standard_spec):
        empty = Hand(spec=standard_spec)
        assert inducer_count(empty, empty, {}) == 31104

    def test_inducers_of_a_fixed_card(self, standard_spec, hand, parser):
        x = parser.parse_card("0000")
        found = inducers(hand("0000"), hand("0000"), {x: x})
        assert len(found) == 384
        assert found[0] == identity(standard_spec)

    def test_inducers_reproduce_the_mapping(self, hand, parser):
        first, second = hand("0000 1111"), hand("0120 2201")
        mapping = parser.parse_mapping("0000->2201\n1111->0120")
        for g in inducers(first, second, mapping)[:10]:
            assert apply_to_hand(g, first) == second

    def test_mapping_must_cover_the_first_hand(self, hand, parser):
        mapping = parser.parse_mapping("0000->0000")
        with pytest.raises(MalformedMappingError):
            inducer_count(hand("0000 1111"), hand("0000 1111"), mapping)

    def test_mapping_must_hit_the_second_hand(self, hand, parser):
        mapping = parser.parse_mapping("0000->1111\n1111->2222")
        with pytest.raises(MalformedMappingError):
            inducer_count(hand("0000 1111"), hand("0000 1111"), mapping)

    def test_full_deck_is_fixed_by_everything(self, standard_spec):
        assert stabilizer_order(make_deck(standard_spec)) == 31104

    def test_inducers_partition_the_stabilizer(self, hand, rng, standard_spec):
        for h in (hand("0000 0001 0002"), random_hand(standard_spec, rng, 4)):
            total = sum(inducer_count(h, h, phi) for phi in automorphisms(h))
            assert total == stabilizer_order(h)

    def test_full_deck_permutation_has_one_inducer(self, standard_spec, rng):
        deck = make_deck(standard_spec)
        for _ in range(3):
            g = random_element(standard_spec, rng)
            mapping = {x: apply_element(g, x) for x in deck.cards}
            assert inducer_count(deck, deck, mapping) == 1
            assert inducers(deck, deck, mapping) == [g]


# ── Complements ──────────────────────────────────────────────────────────

class TestComplements:

    def test_complements_of_distinct_classes_differ(self):
        reps = [representative_for_symbol(s) for s in valid_symbols()]
        canonical = {canonical_form(complement(r)) for r in reps}
        assert len(canonical) == 20

    def test_complements_of_isomorphic_hands_agree(self, standard_spec, rng):
        for symbol in valid_symbols():
            rep = representative_for_symbol(symbol)
            image = apply_to_hand(random_element(standard_spec, rng), rep)
            assert are_isomorphic(complement(rep), complement(image))

    def test_complement_decides_like_the_hand(self, hand):
        first, second = hand("0000 0111 0222"), hand("0000 0011 0022")
        assert not are_isomorphic(complement(first), complement(second))
