import os
from dataclasses import dataclass
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


@dataclass
class Config:
    """Configuration settings for deck computations and their surfaces"""

    # Default deck D(k^d)
    DEFAULT_K: int = int(os.getenv("SET_HANDS_K", "3"))
    DEFAULT_D: int = int(os.getenv("SET_HANDS_D", "4"))

    # Capacity limits
    DECK_CAP: int = int(os.getenv("SET_HANDS_DECK_CAP", "1048576"))  # max k^d
    GROUP_CAP: int = int(os.getenv("SET_HANDS_GROUP_CAP", "200000"))  # max d!(k!)^d
    SUBSET_CAP: int = int(os.getenv("SET_HANDS_SUBSET_CAP", "5000000"))  # max C(k^d, n)
    AUGMENT_MAX_N: int = int(os.getenv("SET_HANDS_AUGMENT_MAX_N", "5"))

    # Representation and scanning
    BITSET_THRESHOLD: int = 4096  # decks up to this size key hands by bitmask
    GROUP_CHUNK: int = 65536  # group-table rows per vectorized block

    LOG_LEVEL: str = os.getenv("SET_HANDS_LOG_LEVEL", "WARNING")


config = Config()
