import logging
from typing import Callable, Optional, TypeVar

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from config import config
from deck_system import DeckSystem
from errors import CapacityError, DeckError
from models import (
    BurnsideReport,
    ClassReport,
    CountReport,
    DealReport,
    HandListReport,
    InducerReport,
    IsoReport,
    PartitionReport,
    TableReport,
    VerificationReport,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


# Pydantic models for requests
class DeckRequest(BaseModel):
    """Deck selection shared by every request; defaults come from config"""

    k: Optional[int] = None
    d: Optional[int] = None


class ClassifyRequest(DeckRequest):
    hand: str


class IsoRequest(DeckRequest):
    first: str
    second: str


class BoardRequest(DeckRequest):
    """A board with either a named goal or a goal hand"""

    board: str
    goal: Optional[str] = None
    goal_hand: Optional[str] = None


class InducerRequest(DeckRequest):
    first: str
    second: str
    mapping: str
    limit: Optional[int] = None


def _guarded(operation: Callable[[], T]) -> T:
    """Run a library call, translating its errors into HTTP status codes"""
    try:
        return operation()
    except CapacityError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except DeckError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("Unexpected failure")
        raise HTTPException(status_code=500, detail=str(e))


def create_app(deck_system: DeckSystem) -> FastAPI:
    """Build the HTTP surface around a deck system"""
    app = FastAPI(title="SET Hand Theory", root_path="")

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # API Endpoints (plain def: FastAPI runs them on its thread pool)

    @app.post("/api/classify", response_model=ClassReport)
    def classify(request: ClassifyRequest):
        """Class, canonical representative and automorphisms of a hand"""
        return _guarded(
            lambda: deck_system.classify(request.hand, request.k, request.d)
        )

    @app.post("/api/iso", response_model=IsoReport)
    def isomorphism(request: IsoRequest):
        """Decide whether two hands are isomorphic, with a witness when they are"""
        return _guarded(
            lambda: deck_system.compare(
                request.first, request.second, request.k, request.d
            )
        )

    @app.get("/api/table", response_model=TableReport)
    def class_table(
        n_min: int = 0,
        n_max: int = 4,
        strategy: str = "auto",
        k: Optional[int] = None,
        d: Optional[int] = None,
    ):
        return _guarded(lambda: deck_system.class_table(n_min, n_max, strategy, k, d))

    @app.get("/api/burnside", response_model=BurnsideReport)
    def burnside(
        method: str = "element",
        max_n: Optional[int] = None,
        k: Optional[int] = None,
        d: Optional[int] = None,
    ):
        return _guarded(lambda: deck_system.burnside(method, max_n, k, d))

    @app.post("/api/find", response_model=HandListReport)
    def find(request: BoardRequest):
        """Every goal hand on a board"""
        return _guarded(
            lambda: deck_system.find(
                request.board, request.goal, request.goal_hand, request.k, request.d
            )
        )

    @app.get("/api/deal", response_model=DealReport)
    def deal(
        size: int = 12,
        seed: int = 1,
        k: Optional[int] = None,
        d: Optional[int] = None,
    ):
        return _guarded(lambda: deck_system.deal(size, seed, k, d))

    @app.post("/api/partition", response_model=PartitionReport)
    def partition(request: BoardRequest):
        """Split a board into disjoint goal hands; blocks is null when impossible"""
        return _guarded(
            lambda: deck_system.partition(
                request.board, request.goal, request.goal_hand, request.k, request.d
            )
        )

    @app.get("/api/count/{goal}", response_model=CountReport)
    def count(goal: str, k: Optional[int] = None, d: Optional[int] = None):
        return _guarded(lambda: deck_system.count(goal, None, k, d))

    @app.post("/api/inducers", response_model=InducerReport)
    def inducers(request: InducerRequest):
        return _guarded(
            lambda: deck_system.inducers(
                request.first,
                request.second,
                request.mapping,
                request.limit,
                request.k,
                request.d,
            )
        )

    @app.get("/api/verify", response_model=VerificationReport)
    def verify(k: Optional[int] = None, d: Optional[int] = None):
        return _guarded(lambda: deck_system.verify(k, d))

    return app


app = create_app(DeckSystem(config))
