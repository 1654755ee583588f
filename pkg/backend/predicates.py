"""Game predicates: Set, Stun and Quad, on hands and on batches of index tuples."""

from typing import Iterable
import numpy as np

from deck import deck_digits
from errors import HandSizeError, UnsupportedSpecError
from models import DeckSpec, Hand


def _require(hand: Hand, size: int, k: int, name: str) -> None:
    if hand.spec.k != k:
        raise UnsupportedSpecError(f"{name} needs a deck with k={k}, not {hand.spec}")
    if len(hand) != size:
        raise HandSizeError(f"{name} takes {size} cards, got {len(hand)}")


def _distinct_values(spec: DeckSpec, triples: np.ndarray) -> np.ndarray:
    """Distinct values per attribute of each triple, shape (m, d)"""
    digits = deck_digits(spec)[np.asarray(triples, dtype=np.int64)]
    a, b, c = digits[:, 0], digits[:, 1], digits[:, 2]
    return 1 + (a != b) + ((c != a) & (c != b))


def set_mask(spec: DeckSpec, triples: np.ndarray) -> np.ndarray:
    """For each row of card indices: one or three values in every attribute"""
    return (_distinct_values(spec, triples) != 2).all(axis=1)


def stun_mask(spec: DeckSpec, triples: np.ndarray) -> np.ndarray:
    """For each row of card indices: exactly two values in every attribute"""
    return (_distinct_values(spec, triples) == 2).all(axis=1)


def quad_mask(spec: DeckSpec, quads: np.ndarray) -> np.ndarray:
    """Rows of four card indices whose attributes are all alike, all distinct or 2+2"""
    digits = np.sort(deck_digits(spec)[np.asarray(quads, dtype=np.int64)], axis=1)
    v0, v1, v2, v3 = digits[:, 0], digits[:, 1], digits[:, 2], digits[:, 3]
    alike = v0 == v3
    distinct = (v0 < v1) & (v1 < v2) & (v2 < v3)
    split = (v0 == v1) & (v2 == v3) & (v1 != v2)
    return (alike | distinct | split).all(axis=1)


def _as_rows(hand: Hand) -> np.ndarray:
    return np.asarray([hand.indices], dtype=np.int64)


def is_set(hand: Hand) -> bool:
    _require(hand, 3, 3, "is_set")
    return bool(set_mask(hand.spec, _as_rows(hand))[0])


def is_stun(hand: Hand) -> bool:
    _require(hand, 3, 3, "is_stun")
    return bool(stun_mask(hand.spec, _as_rows(hand))[0])


def is_quad(hand: Hand) -> bool:
    _require(hand, 4, 4, "is_quad")
    return bool(quad_mask(hand.spec, _as_rows(hand))[0])


def count_rows(mask_fn, spec: DeckSpec, rows: Iterable, batch: int = 1 << 18) -> int:
    """Count rows satisfying a mask function, feeding it fixed-size batches"""
    total = 0
    buffer = []
    for row in rows:
        buffer.append(row)
        if len(buffer) == batch:
            total += int(mask_fn(spec, np.asarray(buffer)).sum())
            buffer.clear()
    if buffer:
        total += int(mask_fn(spec, np.asarray(buffer)).sum())
    return total
