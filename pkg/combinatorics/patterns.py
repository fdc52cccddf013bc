"""
Classical pattern containment and the barred pattern 45-3-12.
"""

import itertools
from typing import Iterator, Sequence, Tuple, Union

from combinatorics.permutation import Permutation

PatternLike = Union[Permutation, str, Sequence[int]]


def standardize(values: Sequence[int]) -> Tuple[int, ...]:
    order = sorted(values)
    return tuple(order.index(v) + 1 for v in values)


def _as_tuple(q: PatternLike) -> Tuple[int, ...]:
    return Permutation.parse(q).images


def occurrences(w: Permutation, q: PatternLike) -> Iterator[Tuple[int, ...]]:
    """Position tuples (1-based, increasing) whose values are order-isomorphic to q."""
    pattern = _as_tuple(q)
    k = len(pattern)
    if k > w.n:
        return
    for positions in itertools.combinations(range(w.n), k):
        if standardize([w.images[p] for p in positions]) == pattern:
            yield tuple(p + 1 for p in positions)


def contains_pattern(w: Permutation, q: PatternLike) -> int:
    return sum(1 for _ in occurrences(w, q))


def avoids_45bar312(w: Permutation) -> bool:
    """Every 3412-shaped occurrence a<b<c<d extends by some b<e<c with w(d) < w(e) < w(a)."""
    images = w.images
    for a, b, c, d in occurrences(w, (3, 4, 1, 2)):
        low, high = images[d - 1], images[a - 1]
        if not any(low < images[e - 1] < high for e in range(b + 1, c)):
            return False
    return True
