from typing import Optional


class DeckError(ValueError):
    """Base class for every error raised by the deck library"""


class ParseError(DeckError):
    """Text that does not describe a card, hand, mapping or group element"""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at token {position})"
        super().__init__(message)


class CapacityError(DeckError):
    """A computation would exceed a configured size cap"""

    def __init__(self, what: str, required: int, cap: int):
        self.what = what
        self.required = required
        self.cap = cap
        super().__init__(f"{what} requires {required:,} but the cap is {cap:,}")


class DegeneratePairError(DeckError):
    """An operation on a pair of cards received the same card twice"""


class UnsupportedSpecError(DeckError):
    """The operation is only defined for particular decks"""


class SpecMismatchError(DeckError):
    """Operands belong to different decks"""


class AttributeRangeError(DeckError):
    """An attribute index outside [0, d)"""


class MalformedMappingError(DeckError):
    """A card mapping that is not a bijection between the given hands"""


class DivisibilityError(DeckError):
    """A board whose size is not a multiple of the goal size"""


class HandSizeError(DeckError):
    """A hand of the wrong size for the operation"""


class InvalidSymbolError(DeckError):
    """A three-card symbol that no hand realizes"""
