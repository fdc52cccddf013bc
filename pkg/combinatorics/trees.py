"""
Polygon triangulations, binary trees and the min-split map from permutations.

Polygon vertices are 0..n+1 with the distinguished side {0, n+1}. The binary
tree of a triangulation labels each node by the apex of its triangle, so labels
read 1..n in order.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, List, Optional, Tuple

from combinatorics.permutation import Permutation
from shared.errors import ParseError

Diagonal = Tuple[int, int]


@dataclass(frozen=True)
class BinaryTree:
    label: int
    left: Optional["BinaryTree"] = None
    right: Optional["BinaryTree"] = None

    @property
    def size(self) -> int:
        return 1 + sum(child.size for child in self.children())

    def children(self) -> List["BinaryTree"]:
        return [child for child in (self.left, self.right) if child is not None]

    def in_order(self) -> List[int]:
        left = self.left.in_order() if self.left else []
        right = self.right.in_order() if self.right else []
        return left + [self.label] + right

    def edges(self) -> List[Tuple[int, int]]:
        result = []
        for child in self.children():
            result.append((self.label, child.label))
            result.extend(child.edges())
        return result

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "left": self.left.to_dict() if self.left else None,
            "right": self.right.to_dict() if self.right else None,
        }


def unordered_canonical(tree: Optional[BinaryTree]) -> str:
    """Sorted recursive serialization; equal iff isomorphic as unordered rooted trees."""
    if tree is None:
        return ""
    return "(" + "".join(sorted(unordered_canonical(c) for c in tree.children())) + ")"


@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: FrozenSet[Diagonal]

    def __post_init__(self):
        diagonals = frozenset(tuple(sorted(d)) for d in self.diagonals)
        object.__setattr__(self, "diagonals", diagonals)
        if self.n < 1:
            raise ParseError("A triangulation needs n >= 1")
        if len(diagonals) != self.n - 1:
            raise ParseError(f"Expected {self.n - 1} diagonals, got {len(diagonals)}")
        for a, b in diagonals:
            if not 0 <= a < b <= self.n + 1 or b - a < 2 or (a, b) == (0, self.n + 1):
                raise ParseError(f"({a}, {b}) is not a diagonal of the {self.n + 2}-gon")
        for a, b in diagonals:
            for c, d in diagonals:
                if a < c < b < d:
                    raise ParseError(f"Diagonals ({a}, {b}) and ({c}, {d}) cross")

    @classmethod
    def from_dict(cls, data: dict) -> "Triangulation":
        return cls(int(data["n"]), frozenset(tuple(d) for d in data["diagonals"]))

    def to_dict(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in sorted(self.diagonals)]}

    def _is_chord(self, a: int, b: int) -> bool:
        return b - a == 1 or (a, b) in self.diagonals or (a, b) == (0, self.n + 1)

    @cached_property
    def apexes(self) -> Dict[Diagonal, int]:
        """Side (a, b) -> the third vertex of the triangle below it."""
        result: Dict[Diagonal, int] = {}

        def split(a: int, b: int):
            if b - a < 2:
                return
            for m in range(a + 1, b):
                if self._is_chord(a, m) and self._is_chord(m, b):
                    result[(a, b)] = m
                    split(a, m)
                    split(m, b)
                    return

        split(0, self.n + 1)
        return result

    @property
    def triangles(self) -> List[Tuple[int, int, int]]:
        return sorted((a, m, b) for (a, b), m in self.apexes.items())


@dataclass(frozen=True)
class LeftRightTrees:
    n: int
    left: Dict[int, int]
    right: Dict[int, int]

    @property
    def left_edges(self) -> List[Tuple[int, int]]:
        return sorted((self.left[k], k) for k in range(1, self.n + 1))

    @property
    def right_edges(self) -> List[Tuple[int, int]]:
        return sorted((k, self.right[k]) for k in range(1, self.n + 1))

    @property
    def root(self) -> int:
        """The apex on the side {0, n+1}."""
        n = self.n
        return next(k for k in range(1, n + 1) if (self.left[k], self.right[k]) == (0, n + 1))


def left_right_trees(triangulation: Triangulation) -> LeftRightTrees:
    left: Dict[int, int] = {}
    right: Dict[int, int] = {}
    for (a, b), k in triangulation.apexes.items():
        left[k] = a
        right[k] = b
    return LeftRightTrees(triangulation.n, left, right)


def tree_of_triangulation(triangulation: Triangulation) -> BinaryTree:
    apexes = triangulation.apexes

    def build(a: int, b: int) -> Optional[BinaryTree]:
        if b - a < 2:
            return None
        m = apexes[(a, b)]
        return BinaryTree(m, build(a, m), build(m, b))

    return build(0, triangulation.n + 1)


def triangulation_of_tree(tree: BinaryTree) -> Triangulation:
    n = tree.size
    diagonals = set()

    def walk(node: Optional[BinaryTree], a: int, b: int):
        if node is None:
            return
        m = node.label
        if not a < m < b:
            raise ParseError("Binary tree labels must be in in-order position")
        for side in ((a, m), (m, b)):
            if side[1] - side[0] >= 2:
                diagonals.add(side)
        walk(node.left, a, m)
        walk(node.right, m, b)

    walk(tree, 0, n + 1)
    return Triangulation(n, frozenset(diagonals))


@lru_cache(maxsize=None)
def _diagonal_sets(a: int, b: int) -> Tuple[FrozenSet[Diagonal], ...]:
    if b - a < 2:
        return (frozenset(),)
    result = []
    for m in range(a + 1, b):
        own = {side for side in ((a, m), (m, b)) if side[1] - side[0] >= 2}
        for left in _diagonal_sets(a, m):
            for right in _diagonal_sets(m, b):
                result.append(frozenset(own) | left | right)
    return tuple(result)


def triangulations(n: int) -> List[Triangulation]:
    """All triangulations of the (n+2)-gon, ordered by the apex on {0, n+1} then recursively."""
    return [Triangulation(n, diagonals) for diagonals in _diagonal_sets(0, n + 1)]


def psi(u: Permutation) -> BinaryTree:
    """Split at the position of the minimum value, recursively."""

    def build(lo: int, hi: int) -> Optional[BinaryTree]:
        if lo > hi:
            return None
        position = min(range(lo, hi + 1), key=lambda i: u(i))
        return BinaryTree(position, build(lo, position - 1), build(position + 1, hi))

    return build(1, u.n)


def wedderburn_etherington(upto: int) -> List[int]:
    """b_1..b_upto."""
    b = [0, 1]
    for k in range(2, upto + 1):
        if k % 2:
            m = (k + 1) // 2
            b.append(sum(b[i] * b[k - i] for i in range(1, m)))
        else:
            m = k // 2
            b.append(b[m] * (b[m] + 1) // 2 + sum(b[i] * b[k - i] for i in range(1, m)))
    return b[1 : upto + 1]
