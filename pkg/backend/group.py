import logging
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, Iterator, List, Optional, Tuple
import numpy as np
from sympy.combinatorics import Permutation

from config import config
from deck import check_deck_size, deck_digits, ensure_same_spec, make_card
from errors import CapacityError
from models import Card, DeckSpec, GroupElement, Hand

logger = logging.getLogger(__name__)


def identity(spec: DeckSpec) -> GroupElement:
    return GroupElement(
        spec=spec,
        attr_perm=tuple(range(spec.d)),
        value_maps=tuple(tuple(range(spec.k)) for _ in range(spec.d)),
    )


def apply_element(g: GroupElement, x: Card) -> Card:
    """Image of a card: digit psi(a) of the result is theta_a(digit a)"""
    ensure_same_spec(g.spec, x.spec)
    digits = [0] * g.spec.d
    for a, v in enumerate(x.digits):
        digits[g.attr_perm[a]] = g.value_maps[a][v]
    return make_card(g.spec, digits)


def deck_permutation(g: GroupElement) -> np.ndarray:
    """The permutation of card indices induced by g"""
    spec = g.spec
    digits = deck_digits(spec)
    image = np.zeros(spec.deck_size, dtype=np.int64)
    for a in range(spec.d):
        theta = np.asarray(g.value_maps[a], dtype=np.int64)
        image += theta[digits[:, a]] * spec.k ** g.attr_perm[a]
    return image


def apply_to_hand(g: GroupElement, hand: Hand) -> Hand:
    """Pointwise image of a hand"""
    ensure_same_spec(g.spec, hand.spec)
    if not hand.indices:
        return hand
    image = deck_permutation(g)
    return Hand.from_indices(hand.spec, (int(image[i]) for i in hand.indices))


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """g1 after g2: apply(compose(g1, g2), x) == apply(g1, apply(g2, x))"""
    spec = ensure_same_spec(g1.spec, g2.spec)
    attr_perm = tuple(g1.attr_perm[g2.attr_perm[a]] for a in range(spec.d))
    value_maps = tuple(
        tuple(
            g1.value_maps[g2.attr_perm[a]][g2.value_maps[a][v]] for v in range(spec.k)
        )
        for a in range(spec.d)
    )
    return GroupElement(spec=spec, attr_perm=attr_perm, value_maps=value_maps)


def inverse(g: GroupElement) -> GroupElement:
    spec = g.spec
    inv_attr = [0] * spec.d
    for a, b in enumerate(g.attr_perm):
        inv_attr[b] = a
    value_maps = []
    for b in range(spec.d):
        theta = g.value_maps[inv_attr[b]]
        inv_theta = [0] * spec.k
        for v, w in enumerate(theta):
            inv_theta[w] = v
        value_maps.append(tuple(inv_theta))
    return GroupElement(
        spec=spec, attr_perm=tuple(inv_attr), value_maps=tuple(value_maps)
    )


# ── Enumeration order ───────────────────────────────────────────────────
#
# Elements are ranked psi-major: attribute permutations in lexicographic order,
# then theta_0, theta_1, ... each in lexicographic order, theta_0 varying slowest.


@lru_cache(maxsize=16)
def _permutations(n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(permutations(range(n)))


@lru_cache(maxsize=16)
def _permutation_ranks(n: int) -> Dict[Tuple[int, ...], int]:
    return {p: i for i, p in enumerate(_permutations(n))}


def group_order(spec: DeckSpec) -> int:
    return spec.group_order


def check_group_size(spec: DeckSpec, group_cap: Optional[int] = None) -> None:
    cap = group_cap if group_cap is not None else config.GROUP_CAP
    if spec.group_order > cap:
        raise CapacityError(f"symmetry group of {spec}", spec.group_order, cap)


def enumerate_group(
    spec: DeckSpec, group_cap: Optional[int] = None
) -> Iterator[GroupElement]:
    """Yield every group element once, in enumeration order"""
    check_group_size(spec, group_cap)
    value_perms = _permutations(spec.k)
    for psi in _permutations(spec.d):
        for thetas in product(value_perms, repeat=spec.d):
            yield GroupElement(spec=spec, attr_perm=psi, value_maps=thetas)


def element_index(g: GroupElement) -> int:
    """Position of g in enumeration order"""
    spec = g.spec
    ranks = _permutation_ranks(spec.k)
    index = _permutation_ranks(spec.d)[g.attr_perm]
    for theta in g.value_maps:
        index = index * len(ranks) + ranks[theta]
    return index


def element_at(spec: DeckSpec, index: int) -> GroupElement:
    """Inverse of element_index"""
    value_perms = _permutations(spec.k)
    m = len(value_perms)
    thetas = []
    for _ in range(spec.d):
        index, r = divmod(index, m)
        thetas.append(value_perms[r])
    return GroupElement(
        spec=spec,
        attr_perm=_permutations(spec.d)[index],
        value_maps=tuple(reversed(thetas)),
    )


def random_element(spec: DeckSpec, rng: random.Random) -> GroupElement:
    psi = list(range(spec.d))
    rng.shuffle(psi)
    thetas = []
    for _ in range(spec.d):
        theta = list(range(spec.k))
        rng.shuffle(theta)
        thetas.append(tuple(theta))
    return GroupElement(spec=spec, attr_perm=tuple(psi), value_maps=tuple(thetas))


# ── Cycle structure ─────────────────────────────────────────────────────


def cycle_type(g: GroupElement) -> Dict[int, int]:
    """Cycle length -> number of cycles of g acting on the whole deck"""
    structure = Permutation(deck_permutation(g).tolist()).cycle_structure
    return dict(sorted(structure.items()))


def cycle_lengths(g: GroupElement) -> List[int]:
    """Cycle lengths of g on the deck, ascending; they sum to k^d"""
    return [length for length, count in cycle_type(g).items() for _ in range(count)]


def point_cycle_lengths(images: np.ndarray) -> np.ndarray:
    """For each row permutation, the length of the cycle through each point"""
    rows, n = images.shape
    start = np.broadcast_to(np.arange(n, dtype=images.dtype), images.shape)
    lengths = np.zeros(images.shape, dtype=np.int64)
    position = images.copy()
    step = 1
    while True:
        closed = (position == start) & (lengths == 0)
        lengths[closed] = step
        if lengths.all():
            return lengths
        position = np.take_along_axis(images, position, axis=1)
        step += 1


# ── Action table ────────────────────────────────────────────────────────


@dataclass(frozen=True, eq=False)
class GroupTable:
    """The whole group as an action table: images[row, x] is the image of card x"""

    spec: DeckSpec
    images: np.ndarray
    chunk: int

    @property
    def order(self) -> int:
        return self.images.shape[0]

    @property
    def block_size(self) -> int:
        """Rows sharing one attribute permutation"""
        return len(_permutations(self.spec.k)) ** self.spec.d

    def element(self, row: int) -> GroupElement:
        return element_at(self.spec, int(row))

    def attr_perms(self) -> Tuple[Tuple[int, ...], ...]:
        return _permutations(self.spec.d)

    def rows_for_attr_perm(self, psi: Tuple[int, ...]) -> Tuple[int, int]:
        """Row span [start, stop) of the elements with attribute permutation psi"""
        start = _permutation_ranks(self.spec.d)[tuple(psi)] * self.block_size
        return start, start + self.block_size

    def chunks(
        self, start: int = 0, stop: Optional[int] = None
    ) -> Iterator[Tuple[int, np.ndarray]]:
        """Yield (first row, row block) in enumeration order"""
        stop = self.order if stop is None else stop
        for offset in range(start, stop, self.chunk):
            yield offset, self.images[offset : min(offset + self.chunk, stop)]


@lru_cache(maxsize=8)
def _build_images(spec: DeckSpec) -> np.ndarray:
    k, d, n = spec.k, spec.d, spec.deck_size
    digits = deck_digits(spec)
    value_perms = np.asarray(_permutations(k), dtype=np.int64).reshape(-1, k)
    m = value_perms.shape[0]
    blocks = []
    for psi in _permutations(d):
        total = np.zeros((1,) * d + (n,), dtype=np.int64)
        for a in range(d):
            shape = [1] * d + [n]
            shape[a] = m
            contribution = value_perms[:, digits[:, a]] * k ** psi[a]
            total = total + contribution.reshape(shape)
        blocks.append(total.reshape(-1, n).astype(np.int32))
    images = np.concatenate(blocks)
    images.setflags(write=False)
    logger.info("Built group table for %s: %d elements", spec, images.shape[0])
    return images


@lru_cache(maxsize=8)
def _cached_table(spec: DeckSpec, chunk: int) -> GroupTable:
    return GroupTable(spec=spec, images=_build_images(spec), chunk=chunk)


def group_table(spec: DeckSpec, group_cap: Optional[int] = None) -> GroupTable:
    """The cached action table of D(k^d)'s group, refused beyond the group cap"""
    check_deck_size(spec)
    check_group_size(spec, group_cap)
    return _cached_table(spec, config.GROUP_CHUNK)
