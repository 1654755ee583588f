from fractions import Fraction
from functools import lru_cache, total_ordering
from math import factorial
from typing import Dict, List, Literal, Optional, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

DIGITS = "0123456789"


class DeckSpec(BaseModel):
    """Parameters of a SET-style deck D(k^d)"""

    model_config = ConfigDict(frozen=True)

    k: int = Field(ge=1)  # values per attribute
    d: int = Field(ge=1)  # number of attributes

    @classmethod
    def standard(cls) -> "DeckSpec":
        """The 81-card deck D(3^4)"""
        return cls(k=3, d=4)

    @property
    def deck_size(self) -> int:
        return self.k**self.d

    @property
    def group_order(self) -> int:
        """d! * (k!)^d, counting (psi, theta) tuples"""
        return factorial(self.d) * factorial(self.k) ** self.d

    @property
    def is_standard(self) -> bool:
        return self.k == 3 and self.d == 4

    def __str__(self) -> str:
        return f"D({self.k}^{self.d})"


def _digit_text(radix: int, digits: Tuple[int, ...]) -> str:
    """One character per value up to radix 10, dot-separated above"""
    if radix <= len(DIGITS):
        return "".join(DIGITS[v] for v in digits)
    return ".".join(str(v) for v in digits)


@total_ordering
class Card(BaseModel):
    """
    A card: one value index per attribute.

    Cards order by their little-endian deck index, which is lexicographic on
    the reversed digit string: the last attribute is the most significant.
    """

    model_config = ConfigDict(frozen=True)

    spec: DeckSpec
    digits: Tuple[int, ...]

    @model_validator(mode="after")
    def _check_digits(self) -> "Card":
        if len(self.digits) != self.spec.d:
            raise ValueError(f"card needs {self.spec.d} digits, got {len(self.digits)}")
        if any(not 0 <= v < self.spec.k for v in self.digits):
            raise ValueError(f"card digits must lie in [0, {self.spec.k})")
        return self

    @property
    def index(self) -> int:
        """Little-endian position in the deck: sum of digit_a * k^a"""
        index = 0
        for v in reversed(self.digits):
            index = index * self.spec.k + v
        return index

    def __lt__(self, other: "Card") -> bool:
        return self.index < other.index

    def __str__(self) -> str:
        return _digit_text(self.spec.k, self.digits)


@lru_cache(maxsize=1 << 16)
def card_at(spec: DeckSpec, index: int) -> Card:
    """Decode a little-endian card index"""
    digits = []
    for _ in range(spec.d):
        index, v = divmod(index, spec.k)
        digits.append(v)
    return Card(spec=spec, digits=tuple(digits))


class Hand(BaseModel):
    """A set of distinct cards of one deck, kept as sorted card indices"""

    model_config = ConfigDict(frozen=True)

    spec: DeckSpec
    indices: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def _check_indices(self) -> "Hand":
        size = self.spec.deck_size
        previous = -1
        for i in self.indices:
            if i <= previous:
                raise ValueError("hand indices must be strictly increasing")
            previous = i
        if self.indices and self.indices[-1] >= size:
            raise ValueError(f"card index {self.indices[-1]} outside deck of {size}")
        return self

    @classmethod
    def from_indices(cls, spec: DeckSpec, indices) -> "Hand":
        ordered = sorted(indices)
        if len(set(ordered)) != len(ordered):
            raise ValueError("a hand cannot hold the same card twice")
        return cls(spec=spec, indices=tuple(int(i) for i in ordered))

    @classmethod
    def from_cards(cls, spec: DeckSpec, cards) -> "Hand":
        return cls.from_indices(spec, [card.index for card in cards])

    @property
    def cards(self) -> Tuple[Card, ...]:
        return tuple(card_at(self.spec, i) for i in self.indices)

    @property
    def mask(self) -> int:
        """Bitset over card indices"""
        mask = 0
        for i in self.indices:
            mask |= 1 << i
        return mask

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, card: Card) -> bool:
        return card.spec == self.spec and card.index in self.indices

    def __str__(self) -> str:
        return " ".join(str(card) for card in self.cards)


class GroupElement(BaseModel):
    """Attribute permutation psi with a value bijection theta_a per source attribute"""

    model_config = ConfigDict(frozen=True)

    spec: DeckSpec
    attr_perm: Tuple[int, ...]  # attr_perm[a] = psi(a)
    value_maps: Tuple[Tuple[int, ...], ...]  # value_maps[a][v] = theta_a(v)

    @model_validator(mode="after")
    def _check_bijections(self) -> "GroupElement":
        k, d = self.spec.k, self.spec.d
        if sorted(self.attr_perm) != list(range(d)):
            raise ValueError("attr_perm must be a permutation of the attributes")
        if len(self.value_maps) != d:
            raise ValueError(f"need {d} value maps, got {len(self.value_maps)}")
        for theta in self.value_maps:
            if sorted(theta) != list(range(k)):
                raise ValueError("each value map must be a permutation of the values")
        return self

    @property
    def text(self) -> str:
        parts = [f"psi={_digit_text(self.spec.d, self.attr_perm)}"]
        for a, theta in enumerate(self.value_maps):
            parts.append(f"theta_{a}={_digit_text(self.spec.k, theta)}")
        return ";".join(parts)

    def __str__(self) -> str:
        return self.text


class Symbol3(BaseModel):
    """The symbol (t; p1, p2, p3) of a three-card hand, parts unordered"""

    model_config = ConfigDict(frozen=True)

    t: int = Field(ge=0)  # attributes common to all three cards
    parts: Tuple[int, int, int]  # extra attributes common to each pair, ascending

    @field_validator("parts")
    @classmethod
    def _sort_parts(cls, parts: Tuple[int, int, int]) -> Tuple[int, int, int]:
        if any(p < 0 for p in parts):
            raise ValueError("symbol parts must be non-negative")
        return tuple(sorted(parts))

    def is_valid(self, d: int = 4) -> bool:
        """Realizability conditions for a symbol of D(3^d), d = 4 by default"""
        t, parts = self.t, self.parts
        return (
            t <= 3
            and all(p <= 3 and p + t <= 3 for p in parts)
            and t + sum(parts) <= d
        )

    def __str__(self) -> str:
        return f"({self.t};{','.join(str(p) for p in self.parts)})"


class Witness(BaseModel):
    """An isomorphism H -> H' together with a group element inducing it"""

    model_config = ConfigDict(frozen=True)

    mapping: Tuple[Tuple[Card, Card], ...]
    element: GroupElement

    def as_dict(self) -> Dict[Card, Card]:
        return dict(self.mapping)


class CanonicalForm(BaseModel):
    """The least image of a hand over the whole group"""

    model_config = ConfigDict(frozen=True)

    hand: Hand


class ClassSizeFactors(BaseModel):
    """Factors of the three-card class-size count a*b*c*d/e"""

    model_config = ConfigDict(frozen=True)

    a: int
    b: int
    c: int
    d: int
    e: int

    @property
    def size(self) -> int:
        return self.a * self.b * self.c * self.d // self.e


class ClassRecord(BaseModel):
    """One isomorphism class: canonical representative, size and optional symbol"""

    model_config = ConfigDict(frozen=True)

    representative: Hand
    size: int
    symbol: Optional[Symbol3] = None
    automorphisms: Optional[int] = None

    @property
    def line(self) -> str:
        symbol = str(self.symbol) if self.symbol is not None else "-"
        return f"symbol={symbol} rep={self.representative} size={self.size}"


class GoalSpec(BaseModel):
    """What a game asks players to collect"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["set", "stun", "quad", "class-of"]
    goal_hand: Optional[Hand] = None

    @model_validator(mode="after")
    def _check_goal_hand(self) -> "GoalSpec":
        if self.kind == "class-of" and not (self.goal_hand and len(self.goal_hand)):
            raise ValueError("a class-of goal needs a nonempty goal hand")
        return self


class CountResult(BaseModel):
    """Goal-satisfying hands among all same-size hands of a deck"""

    model_config = ConfigDict(frozen=True)

    count: int
    total: int

    @property
    def probability(self) -> Fraction:
        return Fraction(self.count, self.total) if self.total else Fraction(0)

    @property
    def text(self) -> str:
        p = self.probability
        return f"{self.count} ({p.numerator}/{p.denominator} ~{float(p):.4f})"


# ── Report models shared by the CLI and the HTTP API ────────────────────


class ClassReport(BaseModel):
    deck: str
    hand: str
    representative: str
    size: int
    symbol: Optional[str] = None
    automorphisms: int
    line: str


class IsoReport(BaseModel):
    deck: str
    isomorphic: bool
    element: Optional[str] = None
    mapping: List[str] = []
    table: List[str] = []
    reason: Optional[str] = None


class TableRow(BaseModel):
    n: int
    classes: int
    total: int
    records: List[str] = []


class TableReport(BaseModel):
    deck: str
    rows: List[TableRow]


class BurnsideReport(BaseModel):
    deck: str
    method: str
    counts: List[int]
    palindrome: Optional[bool] = None


class HandListReport(BaseModel):
    deck: str
    goal: str
    hands: List[str]
    scanned: int


class DealReport(BaseModel):
    deck: str
    seed: int
    hand: str


class PartitionReport(BaseModel):
    deck: str
    goal: str
    blocks: Optional[List[str]] = None


class CountReport(BaseModel):
    deck: str
    goal: str
    count: int
    total: int
    probability: str
    approximation: float
    text: str


class InducerReport(BaseModel):
    deck: str
    count: int
    elements: List[str]


class CheckResult(BaseModel):
    name: str
    expected: str
    actual: str
    passed: bool


class VerificationReport(BaseModel):
    deck: str
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
