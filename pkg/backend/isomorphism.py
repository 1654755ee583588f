"""
Hand isomorphism under attribute/value permutations.

Every question here is answered by an exhaustive, vectorized scan of the
group's action table: canonical forms, witnesses, stabilizers, automorphisms
and inducers. Scans walk the table in enumeration order so that "first"
answers do not depend on the block size.
"""

import logging
from collections import Counter
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Tuple
import numpy as np

from deck import ATTRIBUTE_NAMES, VALUE_NAMES, ensure_same_spec
from errors import AttributeRangeError, DegeneratePairError, MalformedMappingError
from group import GroupTable, apply_element, group_table
from models import CanonicalForm, Card, DeckSpec, GroupElement, Hand, Witness, card_at

logger = logging.getLogger(__name__)


# ── Cheap invariants ────────────────────────────────────────────────────


def common_attribute_count(x: Card, y: Card) -> int:
    """Number of attributes on which two distinct cards agree"""
    ensure_same_spec(x.spec, y.spec)
    if x == y:
        raise DegeneratePairError(f"common attributes of {x} with itself")
    return sum(1 for a, b in zip(x.digits, y.digits) if a == b)


def splitting_signature(hand: Hand, attribute: int) -> Tuple[int, ...]:
    """Part sizes of the hand split by value at one attribute, largest first"""
    if not 0 <= attribute < hand.spec.d:
        raise AttributeRangeError(
            f"attribute {attribute} outside [0, {hand.spec.d}) for {hand.spec}"
        )
    counts = Counter(card.digits[attribute] for card in hand.cards)
    return tuple(sorted(counts.values(), reverse=True))


def splitting_signatures(hand: Hand) -> Tuple[Tuple[int, ...], ...]:
    """Multiset of splitting signatures over all attributes"""
    return tuple(sorted(splitting_signature(hand, a) for a in range(hand.spec.d)))


def distance_profile(hand: Hand) -> Tuple[int, ...]:
    """Sorted common-attribute counts of every pair of cards"""
    return tuple(
        sorted(common_attribute_count(x, y) for x, y in combinations(hand.cards, 2))
    )


def distinguishing_invariant(first: Hand, second: Hand) -> Optional[str]:
    """A human-readable invariant separating two hands, if a cheap one exists"""
    if len(first) != len(second):
        return f"hand sizes differ: {len(first)} vs {len(second)}"
    sig1 = Counter(splitting_signatures(first))
    sig2 = Counter(splitting_signatures(second))
    for signature in sorted(set(sig1) | set(sig2)):
        if sig1[signature] != sig2[signature]:
            parts = "+".join(str(p) for p in signature) or "0"
            return (
                f"splitting {parts} occurs via {sig1[signature]} attribute(s) "
                f"of the first hand but {sig2[signature]} of the second"
            )
    prof1 = Counter(distance_profile(first))
    prof2 = Counter(distance_profile(second))
    for common in sorted(set(prof1) | set(prof2)):
        if prof1[common] != prof2[common]:
            return (
                f"pairs sharing {common} attribute(s): "
                f"{prof1[common]} in the first hand, {prof2[common]} in the second"
            )
    return None


# ── Row comparison helpers ──────────────────────────────────────────────


def _sorted_images(block: np.ndarray, indices: Tuple[int, ...]) -> np.ndarray:
    rows = block[:, list(indices)]
    rows.sort(axis=1)
    return rows


def _least_row(rows: np.ndarray, deck_size: int) -> Tuple[int, ...]:
    """Lexicographically least row"""
    width = rows.shape[1]
    if width == 0:
        return ()
    bits = max(1, (deck_size - 1).bit_length())
    if bits * width <= 62:
        keys = np.zeros(rows.shape[0], dtype=np.int64)
        for column in range(width):
            keys = (keys << bits) | rows[:, column].astype(np.int64)
        best = int(np.argmin(keys))
    else:
        best = int(np.lexsort(rows.T[::-1])[0])
    return tuple(int(v) for v in rows[best])


@lru_cache(maxsize=65536)
def canonical_in_table(
    table: GroupTable, indices: Tuple[int, ...]
) -> Tuple[int, ...]:
    """Canonical indices of a sorted hand, cached per table"""
    if not indices:
        return ()
    best = None
    for _, block in table.chunks():
        least = _least_row(_sorted_images(block, indices), table.spec.deck_size)
        if best is None or least < best:
            best = least
    return best


def canonical_indices(
    spec: DeckSpec, indices: Tuple[int, ...], group_cap: Optional[int] = None
) -> Tuple[int, ...]:
    return canonical_in_table(group_table(spec, group_cap), tuple(sorted(indices)))


def canonical_form(hand: Hand, group_cap: Optional[int] = None) -> CanonicalForm:
    """The least image of the hand, comparing sorted card-index sequences"""
    indices = canonical_indices(hand.spec, hand.indices, group_cap)
    return CanonicalForm(hand=Hand(spec=hand.spec, indices=indices))


# ── Isomorphism and witnesses ───────────────────────────────────────────


def are_isomorphic(
    first: Hand, second: Hand, group_cap: Optional[int] = None
) -> bool:
    """True iff some group element maps the first hand onto the second"""
    spec = ensure_same_spec(first.spec, second.spec)
    if len(first) != len(second):
        return False
    if first.indices == second.indices:
        return True
    if distinguishing_invariant(first, second) is not None:
        return False
    return canonical_indices(spec, first.indices, group_cap) == canonical_indices(
        spec, second.indices, group_cap
    )


def _admissible_perms(
    table: GroupTable, first: Hand, second: Hand
) -> List[Tuple[int, ...]]:
    """Attribute permutations sending each attribute to one that splits alike"""
    d = table.spec.d
    sig1 = [splitting_signature(first, a) for a in range(d)]
    sig2 = [splitting_signature(second, a) for a in range(d)]
    return [
        psi
        for psi in table.attr_perms()
        if all(sig1[a] == sig2[psi[a]] for a in range(d))
    ]


def _first_matching_row(
    table: GroupTable,
    indices: Tuple[int, ...],
    target: np.ndarray,
    start: int,
    stop: int,
) -> Optional[int]:
    for offset, block in table.chunks(start, stop):
        hits = np.flatnonzero((_sorted_images(block, indices) == target).all(axis=1))
        if hits.size:
            return offset + int(hits[0])
    return None


def find_witness(
    first: Hand, second: Hand, prune: bool = True, group_cap: Optional[int] = None
) -> Optional[Witness]:
    """The first group element (in enumeration order) mapping first onto second"""
    spec = ensure_same_spec(first.spec, second.spec)
    if len(first) != len(second):
        return None
    table = group_table(spec, group_cap)
    target = np.asarray(second.indices, dtype=table.images.dtype)
    if prune:
        spans = [
            table.rows_for_attr_perm(psi)
            for psi in _admissible_perms(table, first, second)
        ]
    else:
        spans = [(0, table.order)]
    for start, stop in spans:
        row = _first_matching_row(table, first.indices, target, start, stop)
        if row is not None:
            return _witness_from_row(table, first, row)
    return None


def _witness_from_row(table: GroupTable, hand: Hand, row: int) -> Witness:
    images = table.images[row]
    mapping = tuple(
        (card_at(hand.spec, x), card_at(hand.spec, int(images[x])))
        for x in hand.indices
    )
    return Witness(mapping=mapping, element=table.element(row))


def validate_witness(witness: Witness) -> bool:
    """Pointwise application of the element reproduces the mapping"""
    return all(apply_element(witness.element, x) == y for x, y in witness.mapping)


def witness_table(element: GroupElement) -> List[str]:
    """Attribute and value correspondences, named for the standard deck"""
    spec = element.spec
    lines = []
    for a, b in enumerate(element.attr_perm):
        if spec.is_standard:
            source, target = ATTRIBUTE_NAMES[a], ATTRIBUTE_NAMES[b]
            lines.append(f"{source.upper()} => {target.upper()}")
            for v, w in enumerate(element.value_maps[a]):
                lines.append(f"  {VALUE_NAMES[a][v]} -> {VALUE_NAMES[b][w]}")
        else:
            lines.append(f"attribute {a} => {b}")
            for v, w in enumerate(element.value_maps[a]):
                lines.append(f"  {v} -> {w}")
    return lines


# ── Stabilizers, automorphisms, inducers ────────────────────────────────


def _stabilizer_rows(table: GroupTable, hand: Hand) -> np.ndarray:
    target = np.asarray(hand.indices, dtype=table.images.dtype)
    rows = []
    for offset, block in table.chunks():
        images = _sorted_images(block, hand.indices)
        hits = np.flatnonzero((images == target).all(axis=1))
        rows.append(hits + offset)
    return np.concatenate(rows)


def stabilizer_order(hand: Hand, group_cap: Optional[int] = None) -> int:
    """Number of group elements mapping the hand onto itself"""
    return int(_stabilizer_rows(group_table(hand.spec, group_cap), hand).size)


def orbit_size(hand: Hand, group_cap: Optional[int] = None) -> int:
    """Number of hands isomorphic to this one"""
    table = group_table(hand.spec, group_cap)
    return table.order // int(_stabilizer_rows(table, hand).size)


def _automorphism_rows(table: GroupTable, hand: Hand) -> np.ndarray:
    rows = _stabilizer_rows(table, hand)
    restricted = table.images[rows][:, list(hand.indices)]
    return np.unique(restricted, axis=0)


def automorphism_count(hand: Hand, group_cap: Optional[int] = None) -> int:
    """Number of distinct self-isomorphisms of the hand"""
    if not hand.indices:
        return 1
    return int(_automorphism_rows(group_table(hand.spec, group_cap), hand).shape[0])


def automorphisms(
    hand: Hand, group_cap: Optional[int] = None
) -> List[Dict[Card, Card]]:
    """The distinct bijections H -> H induced by the stabilizer"""
    if not hand.indices:
        return [{}]
    table = group_table(hand.spec, group_cap)
    cards = hand.cards
    return [
        {x: card_at(hand.spec, int(y)) for x, y in zip(cards, row)}
        for row in _automorphism_rows(table, hand)
    ]


def _check_mapping(first: Hand, second: Hand, mapping: Dict[Card, Card]) -> None:
    if len(first) != len(second):
        raise MalformedMappingError("hands of different sizes admit no bijection")
    if set(mapping) != set(first.cards):
        raise MalformedMappingError("mapping must be defined on exactly the first hand")
    images = list(mapping.values())
    if len(set(images)) != len(images) or set(images) != set(second.cards):
        raise MalformedMappingError("mapping must be a bijection onto the second hand")


def _inducer_rows(
    table: GroupTable, first: Hand, second: Hand, mapping: Dict[Card, Card]
) -> np.ndarray:
    sources = list(first.indices)
    targets = np.asarray(
        [mapping[card_at(first.spec, x)].index for x in sources],
        dtype=table.images.dtype,
    )
    rows = []
    for offset, block in table.chunks():
        hits = np.flatnonzero((block[:, sources] == targets).all(axis=1))
        rows.append(hits + offset)
    return np.concatenate(rows)


def inducer_count(
    first: Hand,
    second: Hand,
    mapping: Dict[Card, Card],
    group_cap: Optional[int] = None,
) -> int:
    ensure_same_spec(first.spec, second.spec)
    _check_mapping(first, second, mapping)
    table = group_table(first.spec, group_cap)
    return int(_inducer_rows(table, first, second, mapping).size)


def inducers(
    first: Hand,
    second: Hand,
    mapping: Dict[Card, Card],
    group_cap: Optional[int] = None,
) -> List[GroupElement]:
    """All group elements whose action on the first hand equals the mapping"""
    ensure_same_spec(first.spec, second.spec)
    _check_mapping(first, second, mapping)
    table = group_table(first.spec, group_cap)
    return [table.element(row) for row in _inducer_rows(table, first, second, mapping)]
