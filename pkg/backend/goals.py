import logging
from abc import ABC, abstractmethod
from itertools import combinations
from math import comb
from typing import Any, Dict, List, Optional
import numpy as np

from classification import generalized_symbol, representative_for_symbol
from config import config
from deck import deck_digits, ensure_same_spec
from errors import CapacityError, DeckError, UnsupportedSpecError
from isomorphism import (
    canonical_indices,
    distance_profile,
    orbit_size,
    splitting_signatures,
)
from models import DeckSpec, GoalSpec, Hand, Symbol3
from predicates import quad_mask, set_mask, stun_mask

logger = logging.getLogger(__name__)


class Goal(ABC):
    """Abstract base class for the hands a game asks players to collect"""

    def __init__(self, spec: DeckSpec):
        self.spec = spec

    @abstractmethod
    def get_goal_definition(self) -> Dict[str, Any]:
        """Return the goal's name, hand size and description"""
        pass

    @abstractmethod
    def matches_batch(self, rows: np.ndarray) -> np.ndarray:
        """Boolean mask over rows of card indices, each row one candidate hand"""
        pass

    @property
    def name(self) -> str:
        return self.get_goal_definition()["name"]

    @property
    def size(self) -> int:
        return self.get_goal_definition()["size"]

    def matches(self, hand: Hand) -> bool:
        ensure_same_spec(self.spec, hand.spec)
        if len(hand) != self.size:
            return False
        return bool(self.matches_batch(np.asarray([hand.indices]))[0])

    def count_over_deck(self, subset_cap: Optional[int] = None) -> int:
        """Goal hands among all same-size hands, by visiting every candidate"""
        cap = subset_cap if subset_cap is not None else config.SUBSET_CAP
        candidates = comb(self.spec.deck_size, self.size)
        if candidates > cap:
            raise CapacityError(
                f"counting {self.name} hands of {self.spec}", candidates, cap
            )
        rows = np.fromiter(
            (i for c in combinations(range(self.spec.deck_size), self.size) for i in c),
            dtype=np.int64,
            count=candidates * self.size,
        ).reshape(candidates, self.size)
        return int(self.matches_batch(rows).sum())


class SetGoal(Goal):
    """Three cards showing one or three values in every attribute"""

    def __init__(self, spec: DeckSpec):
        if spec.k != 3:
            raise UnsupportedSpecError(f"Sets need k=3, not {spec}")
        super().__init__(spec)

    def get_goal_definition(self) -> Dict[str, Any]:
        return {
            "name": "set",
            "size": 3,
            "description": "one or three values, never exactly two, in each attribute",
        }

    def matches_batch(self, rows: np.ndarray) -> np.ndarray:
        return set_mask(self.spec, rows)


class StunGoal(Goal):
    """Three cards showing exactly two values in every attribute"""

    def __init__(self, spec: DeckSpec):
        if spec.k != 3:
            raise UnsupportedSpecError(f"Stuns need k=3, not {spec}")
        super().__init__(spec)

    def get_goal_definition(self) -> Dict[str, Any]:
        return {
            "name": "stun",
            "size": 3,
            "description": "exactly two values in each attribute",
        }

    def matches_batch(self, rows: np.ndarray) -> np.ndarray:
        return stun_mask(self.spec, rows)


class QuadGoal(Goal):
    """Four cards, each attribute all alike, all different or split 2-2"""

    def __init__(self, spec: DeckSpec):
        if spec.k != 4:
            raise UnsupportedSpecError(f"Quads need k=4, not {spec}")
        super().__init__(spec)

    def get_goal_definition(self) -> Dict[str, Any]:
        return {
            "name": "quad",
            "size": 4,
            "description": "each attribute all alike, all different or split 2-2",
        }

    def matches_batch(self, rows: np.ndarray) -> np.ndarray:
        return quad_mask(self.spec, rows)


class ClassGoal(Goal):
    """Any hand isomorphic to a designated goal hand"""

    def __init__(
        self, goal_hand: Hand, name: str = "class-of", group_cap: Optional[int] = None
    ):
        if not len(goal_hand):
            raise DeckError("a class goal needs a nonempty goal hand")
        super().__init__(goal_hand.spec)
        self.goal_hand = goal_hand
        self.goal_name = name
        self.group_cap = group_cap
        self._symbol: Optional[Symbol3] = None
        if len(goal_hand) == 3:
            self._symbol = generalized_symbol(goal_hand)
        else:
            self._signatures = splitting_signatures(goal_hand)
            self._profile = distance_profile(goal_hand)
            self._canonical = canonical_indices(
                goal_hand.spec, goal_hand.indices, group_cap
            )

    def get_goal_definition(self) -> Dict[str, Any]:
        return {
            "name": self.goal_name,
            "size": len(self.goal_hand),
            "description": f"hands isomorphic to {self.goal_hand}",
        }

    def matches_batch(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int64)
        if self._symbol is not None:
            return self._symbol_mask(rows)
        return np.fromiter(
            (self._matches_row(tuple(int(i) for i in row)) for row in rows),
            dtype=bool,
            count=rows.shape[0],
        )

    def _symbol_mask(self, rows: np.ndarray) -> np.ndarray:
        # Three-card classes are exactly the symbols, in every deck
        digits = deck_digits(self.spec)[rows]
        x1, x2, x3 = digits[:, 0], digits[:, 1], digits[:, 2]
        eq12, eq13, eq23 = x1 == x2, x1 == x3, x2 == x3
        t = (eq12 & eq13).sum(axis=1)
        parts = np.sort(
            np.stack(
                [eq23.sum(axis=1) - t, eq13.sum(axis=1) - t, eq12.sum(axis=1) - t],
                axis=1,
            ),
            axis=1,
        )
        target = np.asarray(self._symbol.parts)
        return (t == self._symbol.t) & (parts == target).all(axis=1)

    def _matches_row(self, indices) -> bool:
        hand = Hand.from_indices(self.spec, indices)
        if splitting_signatures(hand) != self._signatures:
            return False
        if distance_profile(hand) != self._profile:
            return False
        canonical = canonical_indices(self.spec, hand.indices, self.group_cap)
        return canonical == self._canonical

    def count_over_deck(self, subset_cap: Optional[int] = None) -> int:
        """The goal's class size"""
        return orbit_size(self.goal_hand, self.group_cap)


class GoalManager:
    """Registry of the named goals available for one deck"""

    def __init__(self):
        self.goals: Dict[str, Goal] = {}

    def register_goal(self, goal: Goal):
        """Register any goal that implements the Goal interface"""
        goal_name = goal.get_goal_definition().get("name")
        if not goal_name:
            raise ValueError("Goal must have a 'name' in its definition")
        self.goals[goal_name] = goal

    def get_goal_definitions(self) -> List[Dict[str, Any]]:
        return [goal.get_goal_definition() for goal in self.goals.values()]

    def get_goal(self, goal_name: str) -> Goal:
        if goal_name not in self.goals:
            available = ", ".join(sorted(self.goals)) or "none"
            raise UnsupportedSpecError(
                f"Goal '{goal_name}' not available (available: {available})"
            )
        return self.goals[goal_name]

    @classmethod
    def for_spec(cls, spec: DeckSpec, group_cap: Optional[int] = None) -> "GoalManager":
        """The named goals that make sense in the given deck"""
        manager = cls()
        if spec.k == 3:
            manager.register_goal(SetGoal(spec))
            manager.register_goal(StunGoal(spec))
        if spec.k == 4:
            manager.register_goal(QuadGoal(spec))
        if spec.is_standard:
            soot = representative_for_symbol(Symbol3(t=0, parts=(0, 1, 2)), spec)
            manager.register_goal(ClassGoal(soot, name="soot", group_cap=group_cap))
        return manager


def build_goal(
    spec: DeckSpec, goal_spec: GoalSpec, group_cap: Optional[int] = None
) -> Goal:
    """Turn a GoalSpec into a Goal for the given deck"""
    if goal_spec.kind == "set":
        return SetGoal(spec)
    if goal_spec.kind == "stun":
        return StunGoal(spec)
    if goal_spec.kind == "quad":
        return QuadGoal(spec)
    ensure_same_spec(spec, goal_spec.goal_hand.spec)
    return ClassGoal(goal_spec.goal_hand, group_cap=group_cap)
