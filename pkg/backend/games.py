import logging
import random
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple, Union
import numpy as np

from config import config
from deck import deck_digits, ensure_same_spec
from errors import (
    AttributeRangeError,
    CapacityError,
    DivisibilityError,
    HandSizeError,
)
from goals import ClassGoal, Goal, StunGoal
from models import CountResult, DeckSpec, Hand

logger = logging.getLogger(__name__)

# Candidate sub-hands handed to a goal per vectorized batch
BATCH_ROWS = 1 << 16


def find_goal_hands(
    board: Hand,
    goal: Union[Goal, Hand],
    subset_cap: Optional[int] = None,
    group_cap: Optional[int] = None,
) -> List[Hand]:
    """
    All sub-hands of the board that satisfy the goal.

    Args:
        board: Cards on the table
        goal: A Goal, or a goal hand whose class is sought
        subset_cap: Largest number of candidate sub-hands to examine
        group_cap: Group size cap for class goals

    Returns:
        Matching sub-hands in lexicographic order of their card indices
    """
    if isinstance(goal, Hand):
        goal = ClassGoal(goal, group_cap=group_cap)
    ensure_same_spec(board.spec, goal.spec)
    size = goal.size
    if size > len(board):
        return []
    cap = subset_cap if subset_cap is not None else config.SUBSET_CAP
    candidates = comb(len(board), size)
    if candidates > cap:
        raise CapacityError(f"searching {goal.name} hands on a board", candidates, cap)

    matches = []
    batch: List[Tuple[int, ...]] = []

    def flush():
        rows = np.asarray(batch, dtype=np.int64)
        for row in rows[goal.matches_batch(rows)]:
            matches.append(Hand(spec=board.spec, indices=tuple(int(i) for i in row)))
        batch.clear()

    for candidate in combinations(board.indices, size):
        batch.append(candidate)
        if len(batch) == BATCH_ROWS:
            flush()
    if batch:
        flush()
    return matches


def find_triples(
    board: Hand, goal: Goal, subset_cap: Optional[int] = None
) -> List[Hand]:
    """Three-card goal hands on the board, e.g. every Set or Stun in view"""
    if goal.size != 3:
        raise HandSizeError(f"'{goal.name}' collects {goal.size} cards, not triples")
    return find_goal_hands(board, goal, subset_cap)


def count_over_deck(goal: Goal, subset_cap: Optional[int] = None) -> CountResult:
    """Goal hands among all same-size hands of the deck, with exact probability"""
    return CountResult(
        count=goal.count_over_deck(subset_cap),
        total=comb(goal.spec.deck_size, goal.size),
    )


def partition_into_goals(board: Hand, goal: Goal) -> Optional[List[Hand]]:
    """
    Split the board into disjoint goal hands, if it can be done.

    Backtracks on the smallest uncovered card, trying its goal hands in
    lexicographic order, so the answer is the first partition in that order.
    """
    ensure_same_spec(board.spec, goal.spec)
    if len(board) % goal.size:
        raise DivisibilityError(
            f"a board of {len(board)} cards cannot split into {goal.size}-card hands"
        )
    by_first: Dict[int, List[Hand]] = {}
    for hand in find_goal_hands(board, goal):
        by_first.setdefault(hand.indices[0], []).append(hand)

    def solve(remaining: int) -> Optional[List[Hand]]:
        if not remaining:
            return []
        first = (remaining & -remaining).bit_length() - 1
        for hand in by_first.get(first, []):
            mask = hand.mask
            if mask & remaining == mask:
                rest = solve(remaining & ~mask)
                if rest is not None:
                    return [hand] + rest
        return None

    return solve(board.mask)


def deal(spec: DeckSpec, board_size: int, seed: int) -> Hand:
    """
    A uniformly random board from a seeded Mersenne Twister.

    Partial Fisher-Yates over the card indices: step i swaps position i with
    random.Random(seed).randrange(i, k^d); the first board_size positions
    form the board.
    """
    size = spec.deck_size
    if not 0 <= board_size <= size:
        raise HandSizeError(f"cannot deal {board_size} cards from {spec}")
    rng = random.Random(seed)
    cards = list(range(size))
    for i in range(board_size):
        j = rng.randrange(i, size)
        cards[i], cards[j] = cards[j], cards[i]
    return Hand.from_indices(spec, cards[:board_size])


def monochrome_cards(spec: DeckSpec, attribute: int, value: int) -> Hand:
    """All cards with the given value at one attribute"""
    if not 0 <= attribute < spec.d:
        raise AttributeRangeError(f"attribute {attribute} outside [0, {spec.d})")
    digits = deck_digits(spec)
    return Hand(
        spec=spec,
        indices=tuple(int(i) for i in np.flatnonzero(digits[:, attribute] == value)),
    )


def monochrome_stun_counts(spec: DeckSpec) -> Dict[Tuple[int, int], int]:
    """Stuns among the cards sharing each (attribute, value)"""
    goal = StunGoal(spec)
    return {
        (a, v): len(find_goal_hands(monochrome_cards(spec, a, v), goal))
        for a in range(spec.d)
        for v in range(spec.k)
    }


def stun_free_certificate(spec: DeckSpec) -> bool:
    """True when every single-value slice of the deck holds no Stun"""
    return not any(monochrome_stun_counts(spec).values())


def mean_goal_count(
    spec: DeckSpec, board_size: int, goal: Goal, trials: int, seed: int = 1
) -> Fraction:
    """Average goal hands per dealt board over seeds seed .. seed + trials - 1"""
    total = 0
    for offset in range(trials):
        board = deal(spec, board_size, seed + offset)
        total += len(find_goal_hands(board, goal))
    return Fraction(total, trials)


def partition_frequency(
    spec: DeckSpec, goal: Goal, trials: int, seed: int = 1, board_size: int = 9
) -> Fraction:
    """Share of dealt boards that split completely into goal hands"""
    hits = 0
    for offset in range(trials):
        board = deal(spec, board_size, seed + offset)
        if partition_into_goals(board, goal) is not None:
            hits += 1
    logger.debug("%d of %d boards partitioned into %s", hits, trials, goal.name)
    return Fraction(hits, trials)
