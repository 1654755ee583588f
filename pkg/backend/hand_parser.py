import re
from typing import Dict, List, Optional, Tuple
from pydantic import ValidationError

from errors import ParseError
from models import DIGITS, Card, DeckSpec, GroupElement, Hand, Witness

_MAPPING_PAIR = re.compile(r"(\S+?)\s*->\s*(\S+)")
_ELEMENT_FIELD = re.compile(r"^(psi|theta_(\d+))=(\S+)$")


class HandParser:
    """Reads and writes the text forms of cards, hands, mappings and group elements"""

    def __init__(self, spec: DeckSpec):
        self.spec = spec

    def read_file(self, file_path: str) -> str:
        """Read content from file with UTF-8 encoding"""
        try:
            with open(file_path, "r", encoding="utf-8") as file:
                return file.read()
        except UnicodeDecodeError:
            with open(file_path, "r", encoding="utf-8", errors="ignore") as file:
                return file.read()

    @staticmethod
    def strip_comments(text: str) -> str:
        """Drop everything after '#' on each line"""
        return "\n".join(line.split("#", 1)[0] for line in text.splitlines())

    @staticmethod
    def _values(
        token: str, count: int, radix: int, what: str, position: int
    ) -> List[int]:
        """Split a token into `count` values in [0, radix)"""
        if radix <= len(DIGITS):
            pieces = list(token)
        else:
            pieces = token.split(".")
        if len(pieces) != count:
            raise ParseError(
                f"{what} '{token}' needs {count} values, got {len(pieces)}", position
            )
        values = []
        for piece in pieces:
            # ASCII only: str.isdigit accepts superscripts that int() rejects
            if not (piece.isascii() and piece.isdigit()) or int(piece) >= radix:
                raise ParseError(
                    f"{what} '{token}' has value '{piece}' outside base {radix}",
                    position,
                )
            values.append(int(piece))
        return values

    def parse_card(self, token: str, position: int = 0) -> Card:
        digits = self._values(token, self.spec.d, self.spec.k, "card", position)
        return Card(spec=self.spec, digits=tuple(digits))

    def parse_hand(self, text: str) -> Hand:
        """
        Parse whitespace-separated cards, comments allowed after '#'.

        Args:
            text: Hand text such as "0000 1111 2222"

        Returns:
            The hand; token positions in errors count from 0
        """
        indices = []
        seen = set()
        for position, token in enumerate(self.strip_comments(text).split()):
            card = self.parse_card(token, position)
            if card.index in seen:
                raise ParseError(f"card '{token}' appears twice", position)
            seen.add(card.index)
            indices.append(card.index)
        return Hand.from_indices(self.spec, indices)

    def parse_mapping(self, text: str) -> Dict[Card, Card]:
        """Parse 'x->y' pairs, one or more per line"""
        mapping: Dict[Card, Card] = {}
        body = self.strip_comments(text)
        leftover = _MAPPING_PAIR.sub(" ", body).split()
        if leftover:
            raise ParseError(f"expected 'x->y' pairs, found '{leftover[0]}'")
        for position, match in enumerate(_MAPPING_PAIR.finditer(body)):
            source = self.parse_card(match.group(1), position)
            target = self.parse_card(match.group(2), position)
            if source in mapping:
                raise ParseError(f"card '{match.group(1)}' mapped twice", position)
            mapping[source] = target
        return mapping

    @staticmethod
    def format_mapping(pairs: Tuple[Tuple[Card, Card], ...]) -> List[str]:
        return [f"{x}->{y}" for x, y in pairs]

    def parse_element(self, text: str) -> GroupElement:
        """Parse 'psi=<d values>;theta_0=<k values>;...'"""
        fields = [f.strip() for f in text.strip().split(";") if f.strip()]
        attr_perm: Optional[List[int]] = None
        value_maps: Dict[int, List[int]] = {}
        for position, field in enumerate(fields):
            match = _ELEMENT_FIELD.match(field)
            if not match:
                raise ParseError(f"malformed group element field '{field}'", position)
            if match.group(1) == "psi":
                attr_perm = self._values(
                    match.group(3), self.spec.d, self.spec.d, "psi", position
                )
            else:
                a = int(match.group(2))
                if a >= self.spec.d or a in value_maps:
                    raise ParseError(f"unexpected field '{field}'", position)
                value_maps[a] = self._values(
                    match.group(3), self.spec.k, self.spec.k, "theta", position
                )
        if attr_perm is None or len(value_maps) != self.spec.d:
            raise ParseError(f"group element needs psi and {self.spec.d} theta fields")
        try:
            return GroupElement(
                spec=self.spec,
                attr_perm=tuple(attr_perm),
                value_maps=tuple(tuple(value_maps[a]) for a in range(self.spec.d)),
            )
        except ValidationError as e:
            raise ParseError(f"not a group element: {e.errors()[0]['msg']}") from e

    def format_witness(self, witness: Witness) -> str:
        """Group element text followed by one 'x->y' line per card"""
        return "\n".join([witness.element.text, *self.format_mapping(witness.mapping)])

    def parse_witness(self, text: str) -> Witness:
        lines = [
            line for line in self.strip_comments(text).splitlines() if line.strip()
        ]
        if not lines:
            raise ParseError("empty witness")
        element = self.parse_element(lines[0])
        mapping = self.parse_mapping("\n".join(lines[1:]))
        return Witness(mapping=tuple(mapping.items()), element=element)
