import logging
from collections import Counter
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Dict, List, Literal, Optional, Tuple
import numpy as np

from config import config
from cycle_index import cycle_index_counts, subset_polynomial
from deck import check_deck_size, deck_digits, hand_key
from errors import (
    CapacityError,
    HandSizeError,
    InvalidSymbolError,
    UnsupportedSpecError,
)
from group import GroupTable, group_table, point_cycle_lengths
from isomorphism import (
    automorphism_count,
    canonical_form,
    canonical_in_table,
    orbit_size,
)
from models import ClassRecord, ClassSizeFactors, DeckSpec, Hand, Symbol3

logger = logging.getLogger(__name__)

Strategy = Literal["auto", "scan", "augment"]


# ── Three-card symbols ──────────────────────────────────────────────────


def generalized_symbol(hand: Hand) -> Symbol3:
    """
    Symbol (t; p1, p2, p3) of a three-card hand in any deck.

    t counts attributes where all three cards agree; each p counts the
    further attributes shared by one pair.
    """
    if len(hand) != 3:
        raise HandSizeError(f"symbols need a three-card hand, got {len(hand)} cards")
    x1, x2, x3 = (card.digits for card in hand.cards)
    t = sum(1 for a, b, c in zip(x1, x2, x3) if a == b == c)

    def extra(u, v):
        return sum(1 for a, b in zip(u, v) if a == b) - t

    return Symbol3(t=t, parts=(extra(x2, x3), extra(x1, x3), extra(x1, x2)))


def symbol3(hand: Hand) -> Symbol3:
    """Symbol of a three-card hand of the standard deck"""
    if not hand.spec.is_standard:
        raise UnsupportedSpecError(f"symbol3 is defined on D(3^4), not {hand.spec}")
    return generalized_symbol(hand)


def valid_symbols(d: int = 4) -> List[Symbol3]:
    """Every realizable symbol of D(3^d), ordered by t then parts"""
    symbols = []
    for t in range(4):
        for parts in combinations_with_replacement(range(4), 3):
            symbol = Symbol3(t=t, parts=parts)
            if symbol.is_valid(d):
                symbols.append(symbol)
    return symbols


def e_factor(symbol: Symbol3) -> int:
    """Self-isomorphisms of a hand with this symbol: 6, 2 or 1"""
    distinct = len(set(symbol.parts))
    return {1: 6, 2: 2, 3: 1}[distinct]


def _check_symbol(symbol: Symbol3, spec: DeckSpec) -> None:
    if spec.k != 3:
        raise UnsupportedSpecError(f"three-card symbols need k=3, not {spec}")
    if not symbol.is_valid(spec.d):
        raise InvalidSymbolError(f"{symbol} is not the symbol of any hand of {spec}")


def _second_cards(symbol: Symbol3, spec: DeckSpec) -> np.ndarray:
    """Indices of cards x2 pairing with x1 = 0 as the symbol prescribes"""
    digits = deck_digits(spec)
    t, p3 = symbol.t, symbol.parts[2]
    shared = (digits[:, :t] == 0).all(axis=1)
    return np.flatnonzero(shared & ((digits[:, t:] == 0).sum(axis=1) == p3))


def _third_cards(symbol: Symbol3, spec: DeckSpec, second: int) -> np.ndarray:
    """Indices of cards x3 completing (0, second) to a hand with this symbol"""
    digits = deck_digits(spec)
    t = symbol.t
    p1, p2 = symbol.parts[0], symbol.parts[1]
    rest = digits[:, t:]
    x2 = digits[second, t:]
    with_x1 = rest == 0
    with_x2 = rest == x2
    ok = (digits[:, :t] == 0).all(axis=1)
    ok &= ~(with_x1 & with_x2 & (x2 == 0)).any(axis=1)
    ok &= with_x1.sum(axis=1) == p2
    ok &= with_x2.sum(axis=1) == p1
    ok[[0, second]] = False
    return np.flatnonzero(ok)


def class_size_factors(
    symbol: Symbol3, spec: Optional[DeckSpec] = None
) -> ClassSizeFactors:
    """
    The factors of the class size a*b*c*d/e, chosen left to right.

    a picks the t shared attributes and their values, b the first card's
    remaining values, c the second card and d the third; c and d are counted
    directly over the deck. e is the number of self-isomorphisms.

    Args:
        symbol: A valid symbol
        spec: A deck with k=3, the standard deck by default

    Returns:
        The five factors
    """
    spec = spec or DeckSpec.standard()
    _check_symbol(symbol, spec)
    t = symbol.t
    seconds = _second_cards(symbol, spec)
    thirds = _third_cards(symbol, spec, int(seconds[0]))
    return ClassSizeFactors(
        a=comb(spec.d, t) * 3**t,
        b=3 ** (spec.d - t),
        c=int(seconds.size),
        d=int(thirds.size),
        e=e_factor(symbol),
    )


def symbol_class_size(symbol: Symbol3, spec: Optional[DeckSpec] = None) -> int:
    return class_size_factors(symbol, spec).size


def representative_for_symbol(
    symbol: Symbol3, spec: Optional[DeckSpec] = None
) -> Hand:
    """The first hand counted by the class-size factors: x1 = 0, then x2, then x3"""
    spec = spec or DeckSpec.standard()
    _check_symbol(symbol, spec)
    second = int(_second_cards(symbol, spec)[0])
    third = int(_third_cards(symbol, spec, second)[0])
    return Hand.from_indices(spec, [0, second, third])


def exhaustive_symbol_counts(spec: Optional[DeckSpec] = None) -> Dict[Symbol3, int]:
    """Number of three-card hands with each symbol, by visiting every triple"""
    spec = spec or DeckSpec.standard()
    if spec.k != 3:
        raise UnsupportedSpecError(f"three-card symbols need k=3, not {spec}")
    cards = [tuple(int(v) for v in row) for row in deck_digits(spec)]
    counts: Counter = Counter()
    for x1, x2, x3 in combinations(cards, 3):
        t = sum(1 for a, b, c in zip(x1, x2, x3) if a == b == c)
        pairs = (
            sum(1 for a, b in zip(x2, x3) if a == b) - t,
            sum(1 for a, b in zip(x1, x3) if a == b) - t,
            sum(1 for a, b in zip(x1, x2) if a == b) - t,
        )
        counts[(t, tuple(sorted(pairs)))] += 1
    return {
        Symbol3(t=t, parts=parts): count for (t, parts), count in sorted(counts.items())
    }


# ── Class records ───────────────────────────────────────────────────────


def class_of(hand: Hand, group_cap: Optional[int] = None) -> ClassRecord:
    """Canonical representative, class size, automorphisms and symbol of a hand"""
    symbol = symbol3(hand) if hand.spec.is_standard and len(hand) == 3 else None
    return ClassRecord(
        representative=canonical_form(hand, group_cap).hand,
        size=orbit_size(hand, group_cap),
        symbol=symbol,
        automorphisms=automorphism_count(hand, group_cap),
    )


def _record(spec: DeckSpec, indices: Tuple[int, ...], size: int) -> ClassRecord:
    hand = Hand(spec=spec, indices=indices)
    symbol = symbol3(hand) if spec.is_standard and len(indices) == 3 else None
    return ClassRecord(representative=hand, size=size, symbol=symbol)


def _colex_table(deck_size: int, n: int) -> np.ndarray:
    """binomials[c, i] = C(c, i)"""
    return np.array(
        [[comb(c, i) for i in range(n + 1)] for c in range(deck_size)], dtype=np.int64
    )


def _colex_unrank(rank: int, n: int, deck_size: int) -> Tuple[int, ...]:
    subset = []
    top = deck_size - 1
    for i in range(n, 0, -1):
        while comb(top, i) > rank:
            top -= 1
        subset.append(top)
        rank -= comb(top, i)
        top -= 1
    return tuple(reversed(subset))


def _scan_classes(table: GroupTable, n: int) -> List[ClassRecord]:
    """Mark whole orbits in a table of all n-subsets, ranked in colex order"""
    spec = table.spec
    if n == 0:
        return [_record(spec, (), 1)]
    total = comb(spec.deck_size, n)
    binomials = _colex_table(spec.deck_size, n)
    columns = np.arange(1, n + 1)
    seen = np.zeros(total, dtype=bool)
    records = []
    start = 0
    while start < total:
        start += int(np.argmin(seen[start:]))
        if seen[start]:
            break
        subset = _colex_unrank(start, n, spec.deck_size)
        orbit = []
        for _, block in table.chunks():
            images = block[:, list(subset)]
            images.sort(axis=1)
            orbit.append(np.unique(binomials[images, columns].sum(axis=1)))
        ranks = np.unique(np.concatenate(orbit))
        seen[ranks] = True
        representative = canonical_in_table(table, subset)
        records.append(_record(spec, representative, int(ranks.size)))
    logger.debug("Scanned %d subsets of %s into %d classes", total, spec, len(records))
    return records


def _augment_classes(table: GroupTable, n: int) -> List[ClassRecord]:
    """Grow canonical forms one card at a time from the empty hand"""
    spec = table.spec
    representatives = [()]
    for _ in range(n):
        grown = {}
        for rep in representatives:
            present = set(rep)
            for card in range(spec.deck_size):
                if card in present:
                    continue
                canonical = canonical_in_table(table, tuple(sorted(rep + (card,))))
                grown.setdefault(hand_key(spec, canonical), canonical)
        representatives = sorted(grown.values())
    return [
        _record(spec, rep, orbit_size(Hand(spec=spec, indices=rep)))
        for rep in representatives
    ]


def _complement_records(
    table: GroupTable, records: List[ClassRecord]
) -> List[ClassRecord]:
    spec = table.spec
    records_out = []
    for record in records:
        present = set(record.representative.indices)
        rest = tuple(i for i in range(spec.deck_size) if i not in present)
        records_out.append(_record(spec, canonical_in_table(table, rest), record.size))
    return records_out


def enumerate_classes(
    spec: DeckSpec,
    n: int,
    strategy: Strategy = "auto",
    group_cap: Optional[int] = None,
    subset_cap: Optional[int] = None,
    augment_max_n: Optional[int] = None,
) -> List[ClassRecord]:
    """
    One record per isomorphism class of n-card hands.

    Hands larger than half the deck are handled through their complements.
    "scan" marks orbits over all C(k^d, n) subsets; "augment" grows canonical
    forms card by card; "auto" scans within the subset cap and augments up to
    the augmentation limit.

    Returns:
        Records ordered by symbol when present, else by representative
    """
    check_deck_size(spec)
    size = spec.deck_size
    if not 0 <= n <= size:
        raise HandSizeError(f"{spec} has no {n}-card hands")
    subset_cap = subset_cap if subset_cap is not None else config.SUBSET_CAP
    augment_max_n = augment_max_n if augment_max_n is not None else config.AUGMENT_MAX_N
    table = group_table(spec, group_cap)
    m = min(n, size - n)
    subsets = comb(size, m)

    if strategy == "auto":
        if subsets <= subset_cap:
            strategy = "scan"
        elif m <= augment_max_n:
            strategy = "augment"
        else:
            raise CapacityError(
                f"{n}-card class enumeration of {spec}", comb(size, n), subset_cap
            )
    if strategy == "scan" and subsets > subset_cap:
        raise CapacityError(
            f"{n}-card subset scan of {spec}", comb(size, n), subset_cap
        )
    if strategy == "augment" and m > augment_max_n:
        raise CapacityError(f"canonical augmentation of {spec}", m, augment_max_n)
    logger.info("Enumerating %d-card classes of %s by %s", n, spec, strategy)

    if strategy == "scan":
        records = _scan_classes(table, m)
    else:
        records = _augment_classes(table, m)
    if m != n:
        records = _complement_records(table, records)
    return sorted(
        records,
        key=lambda r: (
            (r.symbol.t, r.symbol.parts) if r.symbol else (),
            r.representative.indices,
        ),
    )


# ── Burnside counting ───────────────────────────────────────────────────


def group_cycle_types(spec: DeckSpec, group_cap: Optional[int] = None) -> Counter:
    """Deck cycle types of every group element, as (length, count) tuples"""
    table = group_table(spec, group_cap)
    kinds: Counter = Counter()
    for _, block in table.chunks():
        lengths = point_cycle_lengths(block)
        top = int(lengths.max())
        counts = np.stack(
            [(lengths == ell).sum(axis=1) // ell for ell in range(1, top + 1)], axis=1
        )
        rows, multiplicity = np.unique(counts, axis=0, return_counts=True)
        for row, m in zip(rows, multiplicity):
            key = tuple((ell + 1, int(c)) for ell, c in enumerate(row) if c)
            kinds[key] += int(m)
    return kinds


def count_classes_burnside(
    spec: DeckSpec, max_n: Optional[int] = None, group_cap: Optional[int] = None
) -> List[int]:
    """
    Number of classes of n-card hands for n = 0 .. max_n (default k^d).

    Averages, over every group element, the fixed n-subsets read off the
    element's cycle type.
    """
    top = spec.deck_size if max_n is None else min(max_n, spec.deck_size)
    totals = [0] * (top + 1)
    for kind, multiplicity in group_cycle_types(spec, group_cap).items():
        poly = subset_polynomial(dict(kind), top)
        for n, coefficient in enumerate(poly):
            totals[n] += multiplicity * coefficient
    return [total // spec.group_order for total in totals]


def count_classes_cycle_index(spec: DeckSpec, max_n: Optional[int] = None) -> List[int]:
    """Same counts as count_classes_burnside, from conjugacy-class data alone"""
    check_deck_size(spec)
    return cycle_index_counts(spec, max_n)


def is_palindrome(counts: List[int]) -> bool:
    return counts == counts[::-1]
