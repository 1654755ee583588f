"""
Cycle-type algebra for orbit counting.

A cycle type is a dict mapping cycle length to the number of cycles of that
length. Burnside's lemma turns the cycle types of the group's elements into
class counts through subset polynomials; the wreath-product routines below
produce every cycle type of D(k^d)'s group, with multiplicities, without
enumerating the group.
"""

import logging
from collections import Counter
from itertools import combinations_with_replacement, groupby
from math import comb, factorial, gcd, lcm, prod
from typing import Dict, Iterator, List, Optional, Tuple
from sympy import divisors, mobius
from sympy.utilities.iterables import partitions

from models import DeckSpec

logger = logging.getLogger(__name__)

CycleType = Dict[int, int]


def subset_polynomial(cycle_type: CycleType, max_degree: int) -> List[int]:
    """
    Coefficients of prod over cycles of (1 + x^length), truncated.

    Coefficient n counts the n-subsets fixed by a permutation of this
    cycle type: a fixed subset is a union of whole cycles.

    Args:
        cycle_type: Cycle length -> number of cycles
        max_degree: Highest power of x to keep

    Returns:
        Integer coefficients for x^0 .. x^max_degree
    """
    poly = [0] * (max_degree + 1)
    poly[0] = 1
    for length, count in sorted(cycle_type.items()):
        factor = [0] * (max_degree + 1)
        for j in range(min(count, max_degree // length) + 1):
            factor[j * length] = comb(count, j)
        poly = _truncated_product(poly, factor, max_degree)
    return poly


def _truncated_product(p: List[int], q: List[int], max_degree: int) -> List[int]:
    out = [0] * (max_degree + 1)
    for i, a in enumerate(p):
        if a:
            for j in range(max_degree + 1 - i):
                if q[j]:
                    out[i + j] += a * q[j]
    return out


def combine_cycle_types(first: CycleType, second: CycleType) -> CycleType:
    """Cycle type of the product action on the cartesian product of two point sets"""
    out: Counter = Counter()
    for a, ca in first.items():
        for b, cb in second.items():
            out[lcm(a, b)] += ca * cb * gcd(a, b)
    return dict(out)


def partition_class_size(partition: Dict[int, int], n: int) -> int:
    """Number of permutations of n points with the given cycle type"""
    return factorial(n) // prod(
        length**count * factorial(count) for length, count in partition.items()
    )


def _partitions(n: int) -> List[Dict[int, int]]:
    # sympy reuses the yielded dict
    return [dict(p) for p in partitions(n)]


def _fixed_points_of_power(value_class: Dict[int, int], m: int) -> int:
    """Fixed points of sigma^m for sigma of the given cycle type"""
    return sum(c * count for c, count in value_class.items() if m % c == 0)


def block_cycle_type(length: int, value_class: Dict[int, int]) -> CycleType:
    """
    Cycle type on the digit tuples carried by one attribute cycle.

    An attribute cycle of the given length carries value maps whose product
    around the cycle has cycle type `value_class`; the induced permutation of
    the length-tuple of digits is counted by Moebius inversion of its fixed
    points.
    """
    order = length * lcm(*value_class.keys())
    fixed = {}
    for j in divisors(order):
        g = gcd(j, length)
        fixed[j] = _fixed_points_of_power(value_class, j // g) ** g
    cycles: CycleType = {}
    for ell in divisors(order):
        total = sum(mobius(ell // e) * fixed[e] for e in divisors(ell))
        if total:
            cycles[ell] = int(total) // ell
    return cycles


def _cycle_weight(length: int, value_class: Dict[int, int], k: int) -> int:
    """Value-map tuples on an attribute cycle whose product lies in the class"""
    return factorial(k) ** (length - 1) * partition_class_size(value_class, k)


def wreath_cycle_types(spec: DeckSpec) -> Iterator[Tuple[CycleType, int]]:
    """
    Yield (deck cycle type, number of group elements) pairs covering the group.

    The same cycle type may be yielded more than once; multiplicities add up
    to d! * (k!)^d.
    """
    k, d = spec.k, spec.d
    value_classes = _partitions(k)
    for attr_class in _partitions(d):
        perms = partition_class_size(attr_class, d)
        per_length = []
        for length, count in sorted(attr_class.items()):
            options = []
            choices = combinations_with_replacement(range(len(value_classes)), count)
            for chosen in choices:
                multiplicity = factorial(count) // prod(
                    factorial(len(list(run))) for _, run in groupby(chosen)
                )
                weight = multiplicity
                block: CycleType = {1: 1}
                for index in chosen:
                    value_class = value_classes[index]
                    weight *= _cycle_weight(length, value_class, k)
                    block = combine_cycle_types(
                        block, block_cycle_type(length, value_class)
                    )
                options.append((block, weight))
            per_length.append(options)
        yield from _combine_lengths(per_length, perms)


def _combine_lengths(
    per_length: List[List[Tuple[CycleType, int]]], perms: int
) -> Iterator[Tuple[CycleType, int]]:
    partial: List[Tuple[CycleType, int]] = [({1: 1}, perms)]
    for options in per_length:
        partial = [
            (combine_cycle_types(block, other), weight * other_weight)
            for block, weight in partial
            for other, other_weight in options
        ]
    yield from partial


def cycle_index_counts(spec: DeckSpec, max_n: Optional[int] = None) -> List[int]:
    """Class counts for n = 0 .. max_n from the wreath-product cycle index"""
    top = spec.deck_size if max_n is None else min(max_n, spec.deck_size)
    totals = [0] * (top + 1)
    elements = 0
    for cycle_type, weight in wreath_cycle_types(spec):
        elements += weight
        poly = subset_polynomial(cycle_type, top)
        for n, coefficient in enumerate(poly):
            totals[n] += weight * coefficient
    if elements != spec.group_order:
        raise ArithmeticError(
            f"cycle index covers {elements} elements, expected {spec.group_order}"
        )
    logger.debug("Cycle index of %s summed over %d elements", spec, elements)
    return [total // spec.group_order for total in totals]
