"""
Permutations in one-line notation.

The group law is composition of functions, ``(a * b)(i) = a(b(i))``. Right
multiplication by a transposition ``t(i, j)`` swaps the entries in positions
``i`` and ``j``; left multiplication swaps the values ``i`` and ``j``.
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from shared.errors import ParseError, RankMismatchError

_SHORTHAND = re.compile(r"^(e|w0)@(\d+)$")


@dataclass(frozen=True)
class Permutation:
    images: Tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ParseError(f"{images} is not a permutation of 1..{len(images)}")

    @classmethod
    def parse(cls, text: Union[str, "Permutation", Sequence[int]]) -> "Permutation":
        """Digits for n <= 9, comma or space separated otherwise; ``e@n`` and ``w0@n`` allowed."""
        if isinstance(text, Permutation):
            return text
        if not isinstance(text, str):
            return cls(tuple(text))
        raw = text.strip()
        match = _SHORTHAND.match(raw)
        if match:
            n = int(match.group(2))
            return identity(n) if match.group(1) == "e" else longest(n)
        if re.search(r"[,\s]", raw):
            parts = [p for p in re.split(r"[,\s]+", raw) if p]
        else:
            parts = list(raw)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError:
            raise ParseError(f"Cannot parse permutation from {text!r}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        if self.n <= 9:
            return "".join(str(x) for x in self.images)
        return ",".join(str(x) for x in self.images)

    @cached_property
    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for position, value in enumerate(self.images, start=1):
            inv[value - 1] = position
        return Permutation(tuple(inv))

    @cached_property
    def length(self) -> int:
        images = self.images
        return sum(
            1
            for i in range(len(images))
            for j in range(i + 1, len(images))
            if images[i] > images[j]
        )

    def right_descents(self) -> List[int]:
        return [i for i in range(1, self.n) if self(i) > self(i + 1)]

    def left_descents(self) -> List[int]:
        inv = self.inverse
        return [i for i in range(1, self.n) if inv(i) > inv(i + 1)]

    def ascents(self) -> int:
        return sum(1 for i in range(1, self.n) if self(i) < self(i + 1))

    def swap_positions(self, i: int, j: int) -> "Permutation":
        """``self * t(i, j)``."""
        images = list(self.images)
        images[i - 1], images[j - 1] = images[j - 1], images[i - 1]
        return Permutation(tuple(images))

    def swap_values(self, a: int, b: int) -> "Permutation":
        """``t(a, b) * self``."""
        swap = {a: b, b: a}
        return Permutation(tuple(swap.get(x, x) for x in self.images))

    def conjugate_by_longest(self) -> "Permutation":
        n = self.n
        return Permutation(tuple(n + 1 - self.images[n - i] for i in range(1, n + 1)))

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))


def check_rank(*perms: "Permutation") -> int:
    ranks = {p.n for p in perms}
    if len(ranks) != 1:
        raise RankMismatchError(f"Rank mismatch: {sorted(ranks)}")
    return ranks.pop()


def compose(a: Permutation, b: Permutation) -> Permutation:
    check_rank(a, b)
    return Permutation(tuple(a.images[x - 1] for x in b.images))


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def simple_reflection(i: int, n: int) -> Permutation:
    if not 1 <= i < n:
        raise ParseError(f"s{i} is not a simple reflection of S_{n}")
    return identity(n).swap_positions(i, i + 1)


def transposition(i: int, j: int, n: int) -> Permutation:
    return identity(n).swap_positions(i, j)


def from_word(letters: Iterable[int], n: int) -> Permutation:
    """The product ``s_{i1} s_{i2} ... s_{im}``."""
    result = identity(n)
    for letter in letters:
        if not 1 <= letter < n:
            raise ParseError(f"Letter {letter} out of range for S_{n}")
        result = result.swap_positions(letter, letter + 1)
    return result


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of S_n in lexicographic order."""
    for images in itertools.permutations(range(1, n + 1)):
        yield Permutation(images)
