import logging
from functools import lru_cache
from typing import Hashable, Optional, Sequence
import numpy as np

from config import config
from errors import (
    AttributeRangeError,
    CapacityError,
    DegeneratePairError,
    SpecMismatchError,
    UnsupportedSpecError,
)
from models import Card, DeckSpec, Hand, card_at

logger = logging.getLogger(__name__)

# Display names of the physical deck, in index order. Algorithms only use indices.
ATTRIBUTE_NAMES = ("color", "shape", "fill", "number")
VALUE_NAMES = (
    ("red", "green", "purple"),
    ("oval", "diamond", "squiggle"),
    ("solid", "empty", "stripe"),
    ("single", "double", "triple"),
)


def check_deck_size(spec: DeckSpec, deck_cap: Optional[int] = None) -> None:
    """Raise CapacityError when k^d exceeds the deck cap"""
    cap = deck_cap if deck_cap is not None else config.DECK_CAP
    if spec.deck_size > cap:
        raise CapacityError(f"deck {spec}", spec.deck_size, cap)


def make_deck(spec: DeckSpec, deck_cap: Optional[int] = None) -> Hand:
    """Return the full deck D(k^d) as a hand of k^d cards"""
    check_deck_size(spec, deck_cap)
    return Hand(spec=spec, indices=tuple(range(spec.deck_size)))


def make_card(spec: DeckSpec, digits: Sequence[int]) -> Card:
    return Card(spec=spec, digits=tuple(int(v) for v in digits))


def ensure_same_spec(*specs: DeckSpec) -> DeckSpec:
    first = specs[0]
    for spec in specs[1:]:
        if spec != first:
            raise SpecMismatchError(f"operands belong to {first} and {spec}")
    return first


def value_of(card: Card, attribute: int) -> int:
    """The card's value index for an attribute"""
    if not 0 <= attribute < card.spec.d:
        raise AttributeRangeError(
            f"attribute {attribute} outside [0, {card.spec.d}) for {card.spec}"
        )
    return card.digits[attribute]


def complete_set(x: Card, y: Card) -> Card:
    """The unique third card forming a Set with x and y (k = 3 only)"""
    spec = ensure_same_spec(x.spec, y.spec)
    if spec.k != 3:
        raise UnsupportedSpecError(f"Sets are only completed when k=3, not in {spec}")
    if x == y:
        raise DegeneratePairError(f"cannot complete a Set from {x} twice")
    # matching values stay, distinct values force the third: -(a+b) mod 3 covers both
    return make_card(spec, [(-a - b) % 3 for a, b in zip(x.digits, y.digits)])


def complement(hand: Hand) -> Hand:
    """All cards of the deck not in the hand"""
    present = set(hand.indices)
    return Hand(
        spec=hand.spec,
        indices=tuple(i for i in range(hand.spec.deck_size) if i not in present),
    )


@lru_cache(maxsize=32)
def deck_digits(spec: DeckSpec) -> np.ndarray:
    """Digit matrix of the whole deck, row i holding the digits of card index i"""
    check_deck_size(spec)
    indices = np.arange(spec.deck_size, dtype=np.int64)
    digits = np.empty((spec.deck_size, spec.d), dtype=np.int64)
    for a in range(spec.d):
        digits[:, a] = (indices // spec.k**a) % spec.k
    digits.setflags(write=False)
    return digits


def describe_card(card: Card) -> str:
    """Physical name of a standard-deck card, e.g. 'single solid red oval'"""
    if not card.spec.is_standard:
        return str(card)
    color, shape, fill, number = (
        VALUE_NAMES[a][v] for a, v in enumerate(card.digits)
    )
    return f"{number} {fill} {color} {shape}"


def card_from_index(spec: DeckSpec, index: int) -> Card:
    if not 0 <= index < spec.deck_size:
        raise AttributeRangeError(f"card index {index} outside deck {spec}")
    return card_at(spec, index)


def card_index(card: Card) -> int:
    return card.index


def hand_key(spec: DeckSpec, indices) -> Hashable:
    """Hashable key for a set of card indices: a bitmask on small decks"""
    if spec.deck_size <= config.BITSET_THRESHOLD:
        mask = 0
        for i in indices:
            mask |= 1 << int(i)
        return mask
    return tuple(sorted(int(i) for i in indices))
