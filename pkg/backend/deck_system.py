import logging
from math import comb
from typing import Optional
from pydantic import ValidationError

from classification import (
    class_of,
    count_classes_burnside,
    count_classes_cycle_index,
    enumerate_classes,
    is_palindrome,
)
from deck import check_deck_size
from errors import DeckError
from games import count_over_deck, deal, find_goal_hands, partition_into_goals
from goals import Goal, GoalManager, build_goal
from hand_parser import HandParser
from isomorphism import (
    are_isomorphic,
    distinguishing_invariant,
    find_witness,
    inducer_count,
    inducers,
    witness_table,
)
from models import (
    BurnsideReport,
    ClassReport,
    CountReport,
    DealReport,
    DeckSpec,
    GoalSpec,
    HandListReport,
    InducerReport,
    IsoReport,
    PartitionReport,
    TableReport,
    TableRow,
    VerificationReport,
)
from verification import run_battery

logger = logging.getLogger(__name__)


class DeckSystem:
    """Main orchestrator: binds configuration and caps to the deck library"""

    def __init__(self, config):
        self.config = config

    # ── Shared plumbing ─────────────────────────────────────────────────

    def spec(self, k: Optional[int] = None, d: Optional[int] = None) -> DeckSpec:
        """The deck for a request, falling back to the configured default"""
        try:
            spec = DeckSpec(
                k=k if k is not None else self.config.DEFAULT_K,
                d=d if d is not None else self.config.DEFAULT_D,
            )
        except ValueError as e:
            raise DeckError(f"invalid deck parameters: {e}") from e
        check_deck_size(spec, self.config.DECK_CAP)
        return spec

    @property
    def group_cap(self) -> int:
        return self.config.GROUP_CAP

    @property
    def subset_cap(self) -> int:
        return self.config.SUBSET_CAP

    def resolve_goal(
        self,
        spec: DeckSpec,
        goal: Optional[str] = None,
        goal_hand: Optional[str] = None,
    ) -> Goal:
        """A named goal, or the class of an explicit goal hand"""
        if goal_hand:
            hand = HandParser(spec).parse_hand(goal_hand)
            try:
                goal_spec = GoalSpec(kind="class-of", goal_hand=hand)
            except ValidationError as e:
                raise DeckError(e.errors()[0]["msg"]) from e
            return build_goal(spec, goal_spec, self.group_cap)
        if not goal:
            raise DeckError("a goal name or a goal hand is required")
        return GoalManager.for_spec(spec, self.group_cap).get_goal(goal)

    # ── Operations ──────────────────────────────────────────────────────

    def classify(self, hand_text: str, k=None, d=None) -> ClassReport:
        spec = self.spec(k, d)
        hand = HandParser(spec).parse_hand(hand_text)
        record = class_of(hand, self.group_cap)
        return ClassReport(
            deck=str(spec),
            hand=str(hand),
            representative=str(record.representative),
            size=record.size,
            symbol=str(record.symbol) if record.symbol else None,
            automorphisms=record.automorphisms,
            line=record.line,
        )

    def compare(self, first_text: str, second_text: str, k=None, d=None) -> IsoReport:
        """Decide isomorphism and explain the verdict"""
        spec = self.spec(k, d)
        parser = HandParser(spec)
        first = parser.parse_hand(first_text)
        second = parser.parse_hand(second_text)
        if not are_isomorphic(first, second, self.group_cap):
            reason = distinguishing_invariant(first, second)
            return IsoReport(
                deck=str(spec),
                isomorphic=False,
                reason=reason or "no group element maps the first hand onto the second",
            )
        witness = find_witness(first, second, group_cap=self.group_cap)
        return IsoReport(
            deck=str(spec),
            isomorphic=True,
            element=witness.element.text,
            mapping=parser.format_mapping(witness.mapping),
            table=witness_table(witness.element),
        )

    def class_table(
        self, n_min: int = 0, n_max: int = 4, strategy: str = "auto", k=None, d=None
    ) -> TableReport:
        spec = self.spec(k, d)
        rows = []
        for n in range(n_min, n_max + 1):
            records = enumerate_classes(
                spec,
                n,
                strategy=strategy,
                group_cap=self.group_cap,
                subset_cap=self.subset_cap,
                augment_max_n=self.config.AUGMENT_MAX_N,
            )
            rows.append(
                TableRow(
                    n=n,
                    classes=len(records),
                    total=sum(r.size for r in records),
                    records=[r.line for r in records],
                )
            )
        return TableReport(deck=str(spec), rows=rows)

    def burnside(
        self, method: str = "element", max_n: Optional[int] = None, k=None, d=None
    ) -> BurnsideReport:
        spec = self.spec(k, d)
        if method == "element":
            counts = count_classes_burnside(spec, max_n, self.group_cap)
        elif method == "cycle-index":
            counts = count_classes_cycle_index(spec, max_n)
        else:
            raise DeckError(f"unknown Burnside method '{method}'")
        complete = len(counts) == spec.deck_size + 1
        return BurnsideReport(
            deck=str(spec),
            method=method,
            counts=counts,
            palindrome=is_palindrome(counts) if complete else None,
        )

    def find(
        self,
        board_text: str,
        goal: Optional[str] = None,
        goal_hand: Optional[str] = None,
        k=None,
        d=None,
    ) -> HandListReport:
        spec = self.spec(k, d)
        board = HandParser(spec).parse_hand(board_text)
        target = self.resolve_goal(spec, goal, goal_hand)
        hands = find_goal_hands(board, target, self.subset_cap, self.group_cap)
        return HandListReport(
            deck=str(spec),
            goal=target.name,
            hands=[str(h) for h in hands],
            scanned=comb(len(board), target.size),
        )

    def deal(self, size: int = 12, seed: int = 1, k=None, d=None) -> DealReport:
        spec = self.spec(k, d)
        return DealReport(deck=str(spec), seed=seed, hand=str(deal(spec, size, seed)))

    def partition(
        self,
        board_text: str,
        goal: Optional[str] = None,
        goal_hand: Optional[str] = None,
        k=None,
        d=None,
    ) -> PartitionReport:
        spec = self.spec(k, d)
        board = HandParser(spec).parse_hand(board_text)
        target = self.resolve_goal(spec, goal, goal_hand)
        blocks = partition_into_goals(board, target)
        return PartitionReport(
            deck=str(spec),
            goal=target.name,
            blocks=[str(b) for b in blocks] if blocks is not None else None,
        )

    def count(
        self, goal: Optional[str] = None, goal_hand=None, k=None, d=None
    ) -> CountReport:
        spec = self.spec(k, d)
        target = self.resolve_goal(spec, goal, goal_hand)
        result = count_over_deck(target, self.subset_cap)
        p = result.probability
        return CountReport(
            deck=str(spec),
            goal=target.name,
            count=result.count,
            total=result.total,
            probability=f"{p.numerator}/{p.denominator}",
            approximation=round(float(p), 4),
            text=result.text,
        )

    def inducers(
        self,
        first_text: str,
        second_text: str,
        mapping_text: str,
        limit: Optional[int] = None,
        k=None,
        d=None,
    ) -> InducerReport:
        """Every group element inducing the given card mapping"""
        spec = self.spec(k, d)
        parser = HandParser(spec)
        first = parser.parse_hand(first_text)
        second = parser.parse_hand(second_text)
        mapping = parser.parse_mapping(mapping_text)
        total = inducer_count(first, second, mapping, self.group_cap)
        elements = []
        if limit is None or limit > 0:
            found = inducers(first, second, mapping, self.group_cap)
            elements = [g.text for g in found[:limit]]
        return InducerReport(deck=str(spec), count=total, elements=elements)

    def verify(self, k=None, d=None) -> VerificationReport:
        spec = self.spec(k, d)
        checks = run_battery(spec, self.group_cap, self.subset_cap)
        failed = sum(1 for c in checks if not c.passed)
        logger.info("Verified %s: %d checks, %d failed", spec, len(checks), failed)
        return VerificationReport(deck=str(spec), checks=checks)
