import random

import pytest
from unittest.mock import MagicMock
from fastapi.testclient import TestClient

from app import create_app
from group import group_table
from hand_parser import HandParser
from models import (
    BurnsideReport,
    CheckResult,
    ClassReport,
    CountReport,
    DealReport,
    DeckSpec,
    HandListReport,
    InducerReport,
    IsoReport,
    PartitionReport,
    TableReport,
    TableRow,
    VerificationReport,
)

# The element whose attribute and value table maps COLOR to FILL, red to solid, ...
EXAMPLE_ELEMENT = "psi=2013;theta_0=012;theta_1=210;theta_2=201;theta_3=201"


@pytest.fixture
def standard_spec():
    """The 81-card deck D(3^4)."""
    return DeckSpec.standard()


@pytest.fixture
def parser(standard_spec):
    return HandParser(standard_spec)


@pytest.fixture
def hand(parser):
    """Shorthand: hand("0000 1111 2222") parses a standard-deck hand."""
    return parser.parse_hand


@pytest.fixture
def table(standard_spec):
    return group_table(standard_spec)


@pytest.fixture
def example_element(parser):
    return parser.parse_element(EXAMPLE_ELEMENT)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def mock_deck_system():
    """Mock deck system with sensible defaults for all endpoints."""
    system = MagicMock()
    system.classify.return_value = ClassReport(
        deck="D(3^4)",
        hand="0000 1111 2222",
        representative="0000 1111 2222",
        size=216,
        symbol="(0;0,0,0)",
        automorphisms=6,
        line="symbol=(0;0,0,0) rep=0000 1111 2222 size=216",
    )
    system.compare.return_value = IsoReport(
        deck="D(3^4)",
        isomorphic=True,
        element="psi=0123;theta_0=012;theta_1=012;theta_2=012;theta_3=012",
        mapping=["0000->0000"],
        table=["COLOR => COLOR"],
    )
    system.class_table.return_value = TableReport(
        deck="D(3^4)", rows=[TableRow(n=1, classes=1, total=81, records=[])]
    )
    system.burnside.return_value = BurnsideReport(
        deck="D(3^4)", method="element", counts=[1, 1, 4, 20, 144]
    )
    system.find.return_value = HandListReport(
        deck="D(3^4)", goal="set", hands=["0000 1111 2222"], scanned=4
    )
    system.deal.return_value = DealReport(
        deck="D(3^4)", seed=1, hand="0000 1111 2222"
    )
    system.partition.return_value = PartitionReport(
        deck="D(3^4)", goal="set", blocks=None
    )
    system.count.return_value = CountReport(
        deck="D(3^4)",
        goal="set",
        count=1080,
        total=85320,
        probability="1/79",
        approximation=0.0127,
        text="1080 (1/79 ~0.0127)",
    )
    system.inducers.return_value = InducerReport(deck="D(3^4)", count=0, elements=[])
    system.verify.return_value = VerificationReport(
        deck="D(3^4)",
        checks=[CheckResult(name="group order", expected="1", actual="1", passed=True)],
    )
    return system


@pytest.fixture
def app(mock_deck_system):
    """Application wired to the mock deck system."""
    return create_app(mock_deck_system)


@pytest.fixture
def client(app):
    """Test client for making HTTP requests against the app."""
    return TestClient(app)
