"""
Self-check battery behind the `verify` command.

Each check pairs an expected value with a computation; errors raised by the
library are reported as failed checks rather than propagated.
"""

import logging
from collections import Counter
from functools import cached_property
from typing import Any, Callable, List, Tuple

from classification import (
    count_classes_burnside,
    count_classes_cycle_index,
    e_factor,
    enumerate_classes,
    exhaustive_symbol_counts,
    is_palindrome,
    representative_for_symbol,
    symbol3,
    symbol_class_size,
    valid_symbols,
)
from deck import make_deck
from errors import DeckError
from games import count_over_deck, find_goal_hands, stun_free_certificate
from goals import GoalManager
from group import group_table
from isomorphism import automorphism_count, inducer_count, orbit_size, stabilizer_order
from models import CheckResult, DeckSpec, Hand, Symbol3

logger = logging.getLogger(__name__)

Check = Tuple[str, Any, Callable[[], Any]]

STUN_CLASSES = {"(0;0,1,3)": 5184, "(0;0,2,2)": 3888, "(0;1,1,2)": 7776}


class VerificationBattery:
    """Known counts of a deck, recomputed from scratch"""

    def __init__(self, spec: DeckSpec, group_cap: int, subset_cap: int):
        self.spec = spec
        self.group_cap = group_cap
        self.subset_cap = subset_cap

    @cached_property
    def burnside(self) -> List[int]:
        return count_classes_burnside(self.spec, group_cap=self.group_cap)

    @cached_property
    def goals(self) -> GoalManager:
        return GoalManager.for_spec(self.spec, self.group_cap)

    def classes(self, n: int):
        return enumerate_classes(
            self.spec, n, group_cap=self.group_cap, subset_cap=self.subset_cap
        )

    def run(self) -> List[CheckResult]:
        if self.spec.is_standard:
            checks = self.standard_checks()
        else:
            checks = self.generic_checks()
        return [self._run_check(*check) for check in checks]

    @staticmethod
    def _run_check(name: str, expected: Any, compute: Callable[[], Any]) -> CheckResult:
        try:
            actual = compute()
        except DeckError as e:
            logger.warning("Check '%s' raised: %s", name, e)
            return CheckResult(
                name=name, expected=str(expected), actual=f"error: {e}", passed=False
            )
        return CheckResult(
            name=name,
            expected=str(expected),
            actual=str(actual),
            passed=actual == expected,
        )

    # ── Standard deck ───────────────────────────────────────────────────

    def _two_card_classes(self):
        records = self.classes(2)
        sizes = sorted(r.size for r in records)
        return len(records), sizes, sum(sizes)

    def _three_card_classes(self):
        records = self.classes(3)
        return len(records), sum(r.size for r in records)

    def _symbol_oracles(self) -> int:
        """Symbols whose formula, orbit, enumeration and exhaustive sizes agree"""
        exhaustive = exhaustive_symbol_counts(self.spec)
        enumerated = {r.symbol: r.size for r in self.classes(3)}
        agreeing = 0
        for symbol in valid_symbols():
            sizes = {
                symbol_class_size(symbol),
                orbit_size(representative_for_symbol(symbol), self.group_cap),
                exhaustive.get(symbol),
                enumerated.get(symbol),
            }
            agreeing += len(sizes) == 1
        return agreeing

    def _e_rule(self) -> int:
        return sum(
            automorphism_count(representative_for_symbol(s), self.group_cap)
            == e_factor(s)
            for s in valid_symbols()
        )

    def _stun_classes(self):
        stuns = find_goal_hands(make_deck(self.spec), self.goals.get_goal("stun"))
        return dict(sorted(Counter(str(symbol3(h)) for h in stuns).items()))

    def _set_class_sum(self) -> int:
        return sum(symbol_class_size(Symbol3(t=t, parts=(0, 0, 0))) for t in range(4))

    def standard_checks(self) -> List[Check]:
        spec = self.spec
        empty = Hand(spec=spec)
        one_card = Hand(spec=spec, indices=(0,))
        return [
            (
                "two-card classes",
                (4, [324, 648, 972, 1296], 3240),
                self._two_card_classes,
            ),
            ("three-card classes", (20, 85320), self._three_card_classes),
            ("class-size oracles agree", 20, self._symbol_oracles),
            (
                "Set count",
                "1080 (1/79 ~0.0127)",
                lambda: count_over_deck(self.goals.get_goal("set")).text,
            ),
            ("Set class sum", 1080, self._set_class_sum),
            (
                "Stun count",
                "16848 (78/395 ~0.1975)",
                lambda: count_over_deck(self.goals.get_goal("stun")).text,
            ),
            ("Stun classes", STUN_CLASSES, self._stun_classes),
            (
                "Soot count",
                15552,
                lambda: len(
                    find_goal_hands(make_deck(spec), self.goals.get_goal("soot"))
                ),
            ),
            ("group order", 31104, lambda: group_table(spec, self.group_cap).order),
            (
                "single-card stabilizer",
                384,
                lambda: stabilizer_order(one_card, self.group_cap),
            ),
            (
                "empty-map inducers",
                31104,
                lambda: inducer_count(empty, empty, {}, self.group_cap),
            ),
            ("Burnside prefix", [1, 1, 4, 20, 144], lambda: self.burnside[:5]),
            ("Burnside palindrome", True, lambda: is_palindrome(self.burnside)),
            (
                "Burnside vs enumeration at n=4",
                (144, 144),
                lambda: (len(self.classes(4)), self.burnside[4]),
            ),
            ("automorphism e-rule", 20, self._e_rule),
            (
                "Stun-free single-value slices",
                True,
                lambda: stun_free_certificate(spec),
            ),
            (
                "cycle index vs element-wise",
                True,
                lambda: count_classes_cycle_index(spec) == self.burnside,
            ),
        ]

    # ── Any deck ────────────────────────────────────────────────────────

    def _enumerated_prefix(self) -> List[int]:
        top = min(3, self.spec.deck_size)
        return [len(self.classes(n)) for n in range(top + 1)]

    def generic_checks(self) -> List[Check]:
        spec = self.spec
        top = min(3, spec.deck_size)
        return [
            (
                "group order",
                spec.group_order,
                lambda: group_table(spec, self.group_cap).order,
            ),
            ("Burnside palindrome", True, lambda: is_palindrome(self.burnside)),
            (
                f"Burnside vs enumeration for n<={top}",
                True,
                lambda: self._enumerated_prefix() == self.burnside[: top + 1],
            ),
            (
                "cycle index vs element-wise",
                True,
                lambda: count_classes_cycle_index(spec) == self.burnside,
            ),
        ]


def run_battery(spec: DeckSpec, group_cap: int, subset_cap: int) -> List[CheckResult]:
    return VerificationBattery(spec, group_cap, subset_cap).run()
