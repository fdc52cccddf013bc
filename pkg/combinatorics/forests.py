"""
Signed rooted forests on [n] and the r_i moves.

A forest stores ``parents[i]`` (None for roots) and ``signs[i]`` in {+1, -1}
for the edge from i to its parent. ``r_move(i)`` flips the signs of all edges
joining i to its children.
"""

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from shared.errors import ParseError

# unlabeled signed rooted tree: sorted tuple of (sign, child tree)
Shape = Tuple[Tuple[int, "Shape"], ...]


@dataclass(frozen=True)
class SignedForest:
    n: int
    parents: Tuple[Optional[int], ...]
    signs: Tuple[Optional[int], ...]

    def __post_init__(self):
        if len(self.parents) != self.n or len(self.signs) != self.n:
            raise ParseError("parents and signs must have one entry per vertex")
        for i in range(1, self.n + 1):
            parent, sign = self.parent(i), self.sign(i)
            if parent is None:
                if sign is not None:
                    raise ParseError(f"Root {i} cannot carry a sign")
                continue
            if not 1 <= parent <= self.n or parent == i:
                raise ParseError(f"Vertex {i} has invalid parent {parent}")
            if sign not in (1, -1):
                raise ParseError(f"Edge {i}->{parent} needs a sign in {{+1, -1}}")
        for i in range(1, self.n + 1):
            seen = set()
            current: Optional[int] = i
            while current is not None:
                if current in seen:
                    raise ParseError(f"Parent map has a cycle through {i}")
                seen.add(current)
                current = self.parent(current)

    def parent(self, i: int) -> Optional[int]:
        return self.parents[i - 1]

    def sign(self, i: int) -> Optional[int]:
        return self.signs[i - 1]

    def roots(self) -> List[int]:
        return [i for i in range(1, self.n + 1) if self.parent(i) is None]

    def children(self, i: int) -> List[int]:
        return [j for j in range(1, self.n + 1) if self.parent(j) == i]

    def topological_order(self) -> List[int]:
        order = []
        queue = deque(self.roots())
        while queue:
            i = queue.popleft()
            order.append(i)
            queue.extend(self.children(i))
        return order

    def r_move(self, i: int) -> "SignedForest":
        signs = list(self.signs)
        for child in self.children(i):
            signs[child - 1] = -signs[child - 1]
        return SignedForest(self.n, self.parents, tuple(signs))

    def shape(self) -> Tuple[Shape, ...]:
        """Canonical unlabeled signed shape (no quotient by r moves)."""

        def node(i: int) -> Shape:
            return tuple(sorted((self.sign(c), node(c)) for c in self.children(i)))

        return tuple(sorted(node(r) for r in self.roots()))

    def class_key(self) -> str:
        """Invariant of the r-move orbit: each vertex's child signs up to a global flip."""

        def node(i: int) -> str:
            options = []
            for flip in (1, -1):
                parts = sorted(
                    ("+" if flip * self.sign(c) > 0 else "-") + node(c) for c in self.children(i)
                )
                options.append("(" + "".join(parts) + ")")
            return min(options)

        return "[" + "".join(sorted(node(r) for r in self.roots())) + "]"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "parents": {str(i): self.parent(i) for i in range(1, self.n + 1) if self.parent(i)},
            "signs": {
                str(i): "+" if self.sign(i) > 0 else "-"
                for i in range(1, self.n + 1)
                if self.parent(i)
            },
        }

    @classmethod
    def from_dict(cls, data: dict, n: Optional[int] = None) -> "SignedForest":
        parents: Dict[int, int] = {int(k): int(v) for k, v in data.get("parents", {}).items()}
        raw_signs = data.get("signs", {})
        if n is None:
            n = int(data.get("n", max([0] + list(parents) + list(parents.values()))))
        signs = {}
        for child in parents:
            text = str(raw_signs.get(str(child), "+"))
            if text not in ("+", "-", "1", "-1"):
                raise ParseError(f"Unknown sign {text!r} for vertex {child}")
            signs[child] = -1 if text.startswith("-") else 1
        return cls(
            n,
            tuple(parents.get(i) for i in range(1, n + 1)),
            tuple(signs.get(i) for i in range(1, n + 1)),
        )

    @classmethod
    def isolated(cls, n: int) -> "SignedForest":
        return cls(n, (None,) * n, (None,) * n)

    @classmethod
    def from_shape(cls, shape: Tuple[Shape, ...]) -> "SignedForest":
        """Label an unlabeled shape in preorder."""
        parents: List[Optional[int]] = []
        signs: List[Optional[int]] = []

        def place(tree: Shape, parent: Optional[int], sign: Optional[int]):
            parents.append(parent)
            signs.append(sign)
            label = len(parents)
            for child_sign, child in tree:
                place(child, label, child_sign)

        for tree in shape:
            place(tree, None, None)
        return cls(len(parents), tuple(parents), tuple(signs))


def _multisets(items: List[Tuple[int, object]], total: int, start: int = 0):
    """Multisets of (size, item) pairs from items[start:] with sizes summing to total."""
    if total == 0:
        yield ()
        return
    for index in range(start, len(items)):
        size, item = items[index]
        if size > total:
            continue
        for rest in _multisets(items, total - size, index):
            yield (item,) + rest


@lru_cache(maxsize=None)
def signed_trees(k: int) -> Tuple[Shape, ...]:
    """All unlabeled signed rooted trees with k vertices."""
    if k == 1:
        return ((),)
    items = [
        (size, (sign, tree))
        for size in range(1, k)
        for tree in signed_trees(size)
        for sign in (-1, 1)
    ]
    return tuple(sorted({tuple(sorted(children)) for children in _multisets(items, k - 1)}))


def signed_forest_shapes(n: int) -> List[Tuple[Shape, ...]]:
    items = [(size, tree) for size in range(1, n + 1) for tree in signed_trees(size)]
    return sorted({tuple(sorted(trees)) for trees in _multisets(items, n)})


def sf_orbits(n: int) -> List[List[SignedForest]]:
    """Orbits of unlabeled signed forests under r moves, found by BFS on shapes."""
    remaining = set(signed_forest_shapes(n))
    orbits = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        orbit = {start}
        queue = deque([start])
        while queue:
            forest = SignedForest.from_shape(queue.popleft())
            for i in range(1, n + 1):
                moved = forest.r_move(i).shape()
                if moved not in orbit:
                    orbit.add(moved)
                    queue.append(moved)
        remaining -= orbit
        orbits.append([SignedForest.from_shape(s) for s in sorted(orbit)])
    return orbits


def sf_classes(n: int) -> List[SignedForest]:
    """One representative per class of SF_n, the smallest shape of each orbit."""
    return [orbit[0] for orbit in sf_orbits(n)]


# Published class counts that disagree with the r-move orbit count.
CLASS_COUNT_NOTES = {
    3: "SF_3 has 5 r-move classes, not 4",
}


def class_count_note(n: int) -> Optional[str]:
    return CLASS_COUNT_NOTES.get(n)
