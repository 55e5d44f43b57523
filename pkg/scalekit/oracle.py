"""
Brute-force oracle

Counts representing orders straight from the definitions, without the
orderings, scalecheck or search modules, so their results can be
cross-checked. A weak order on m elements is taken as a surjective rank
map onto 0..k-1; a strict total order is a permutation.
"""
from fractions import Fraction
from itertools import permutations, product
from typing import List, Sequence, Tuple


def set_based_precision(n: int) -> List[Fraction]:
    """Precision of the set-based binary lists of length n, by relevant count"""
    return [Fraction(count, n) for count in range(n + 1)]


def represents(values: Sequence[Fraction], rank: Sequence[int]) -> bool:
    """x <= y iff f(x) <= f(y) for the weak order given by rank"""
    m = len(values)
    return all(
        (rank[x] <= rank[y]) == (values[x] <= values[y]) for x in range(m) for y in range(m)
    )


def equispaced(values: Sequence[Fraction], rank: Sequence[int]) -> bool:
    """Every element sits on one line a * rank + b, a > 0"""
    levels = max(rank) + 1
    if levels == 1:
        return True
    level_value = {}
    for value, level in zip(values, rank):
        level_value.setdefault(level, value)
    a = level_value[1] - level_value[0]
    return a > 0 and all(
        value == level_value[0] + a * level for value, level in zip(values, rank)
    )


def strict_counts(values: Sequence[Fraction]) -> Tuple[int, int, int]:
    """(examined, ordinal, interval) over every strict total order"""
    examined = ordinal = interval = 0
    for permutation in permutations(range(len(values))):
        rank = [0] * len(values)
        for position, element in enumerate(permutation):
            rank[element] = position
        examined += 1
        if represents(values, rank):
            ordinal += 1
            interval += equispaced(values, rank)
    return examined, ordinal, interval


def weak_counts(values: Sequence[Fraction]) -> Tuple[int, int, int]:
    """(examined, ordinal, interval) over every weak order"""
    m = len(values)
    examined = ordinal = interval = 0
    for rank in product(range(m), repeat=m):
        if set(rank) != set(range(max(rank) + 1)):
            continue
        examined += 1
        if represents(values, rank):
            ordinal += 1
            interval += equispaced(values, rank)
    return examined, ordinal, interval
