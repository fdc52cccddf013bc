"""
Bruhat order on S_n, intervals, and reduced words.
"""

import bisect
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

import networkx as nx

from combinatorics.permutation import Permutation, check_rank, from_word
from shared.errors import IntervalError, ParseError


def bruhat_leq(v: Permutation, w: Permutation) -> bool:
    """Sorted-prefix dominance: sort(v(1..d)) <= sort(w(1..d)) entrywise for every d."""
    check_rank(v, w)
    return images_leq(v.images, w.images)


def images_leq(v: Tuple[int, ...], w: Tuple[int, ...]) -> bool:
    v_prefix: List[int] = []
    w_prefix: List[int] = []
    for d in range(len(v) - 1):
        bisect.insort(v_prefix, v[d])
        bisect.insort(w_prefix, w[d])
        for a, b in zip(v_prefix, w_prefix):
            if a > b:
                return False
    return True


def shifted_leq(u: Permutation, a: Permutation, b: Permutation) -> bool:
    """a <=^u b, i.e. u^-1 a <= u^-1 b."""
    inv = u.inverse
    return bruhat_leq(inv * a, inv * b)


def covers(v: Permutation, w: Permutation) -> bool:
    return w.length == v.length + 1 and bruhat_leq(v, w)


def up_covers(u: Permutation) -> List[Permutation]:
    """Elements covering u: u * t(i, j) with u(i) < u(j) and nothing in between."""
    result = []
    images = u.images
    n = u.n
    for i in range(n):
        ceiling = n + 1
        for j in range(i + 1, n):
            if images[i] < images[j] < ceiling:
                result.append(u.swap_positions(i + 1, j + 1))
                ceiling = images[j]
    return sorted(result)


def down_covers(u: Permutation) -> List[Permutation]:
    result = []
    images = u.images
    n = u.n
    for i in range(n):
        floor = 0
        for j in range(i + 1, n):
            if floor < images[j] < images[i]:
                result.append(u.swap_positions(i + 1, j + 1))
                floor = images[j]
    return sorted(result)


@dataclass(frozen=True)
class BruhatInterval:
    v: Permutation
    w: Permutation

    def __post_init__(self):
        check_rank(self.v, self.w)
        if not bruhat_leq(self.v, self.w):
            raise IntervalError(f"{self.v} is not below {self.w} in Bruhat order")

    @property
    def n(self) -> int:
        return self.v.n

    @property
    def rank(self) -> int:
        return self.w.length - self.v.length

    @cached_property
    def elements(self) -> Tuple[Permutation, ...]:
        """BFS over up-covers from v, pruned by <= w; sorted by (length, one-line)."""
        seen = {self.v}
        queue = deque([self.v])
        while queue:
            current = queue.popleft()
            for nxt in up_covers(current):
                if nxt not in seen and bruhat_leq(nxt, self.w):
                    seen.add(nxt)
                    queue.append(nxt)
        return tuple(sorted(seen, key=lambda p: (p.length, p.images)))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, u: Permutation) -> bool:
        return bruhat_leq(self.v, u) and bruhat_leq(u, self.w)

    @cached_property
    def atoms(self) -> FrozenSet[Permutation]:
        return frozenset(u for u in up_covers(self.v) if bruhat_leq(u, self.w))

    @cached_property
    def coatoms(self) -> FrozenSet[Permutation]:
        return frozenset(u for u in down_covers(self.w) if bruhat_leq(self.v, u))

    def hasse_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        members = set(self.elements)
        for u in self.elements:
            graph.add_node(u)
            for nxt in up_covers(u):
                if nxt in members:
                    graph.add_edge(u, nxt)
        return graph

    def is_isomorphic_to(self, hasse: nx.DiGraph) -> bool:
        """Poset isomorphism, decided on Hasse diagrams."""
        mine = self.hasse_digraph()
        if mine.number_of_nodes() != hasse.number_of_nodes():
            return False
        if mine.number_of_edges() != hasse.number_of_edges():
            return False
        return nx.is_isomorphic(mine, hasse)

    def is_boolean(self) -> bool:
        """
        Explicit isomorphism with the Boolean lattice: every element is sent to
        the set of atoms below it; this must be a bijection onto all subsets of
        the atoms that preserves and reflects the order.
        """
        rank = self.rank
        if len(self.elements) != 2 ** rank or len(self.atoms) != rank:
            return False
        atoms = sorted(self.atoms)
        support: Dict[Permutation, FrozenSet[int]] = {
            u: frozenset(k for k, a in enumerate(atoms) if bruhat_leq(a, u))
            for u in self.elements
        }
        if len(set(support.values())) != len(self.elements):
            return False
        for x in self.elements:
            for y in self.elements:
                if bruhat_leq(x, y) != (support[x] <= support[y]):
                    return False
        return True


def boolean_hasse(rank: int) -> nx.DiGraph:
    graph = nx.DiGraph()
    for mask in range(2 ** rank):
        graph.add_node(mask)
        for bit in range(rank):
            if not mask & (1 << bit):
                graph.add_edge(mask, mask | (1 << bit))
    return graph


def product_hasse(first: nx.DiGraph, second: nx.DiGraph) -> nx.DiGraph:
    """Hasse diagram of a product poset."""
    return nx.cartesian_product(first, second)


@dataclass(frozen=True)
class ReducedWord:
    letters: Tuple[int, ...]

    def product(self, n: int) -> Permutation:
        return from_word(self.letters, n)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def has_distinct_letters(self) -> bool:
        return len(set(self.letters)) == len(self.letters)

    @classmethod
    def parse(cls, text: str) -> "ReducedWord":
        """Accepts "s1 s3 s2 s4", "1,3,2,4" or "1324"."""
        raw = text.replace("s", " ").replace(",", " ").split()
        if len(raw) == 1 and len(raw[0]) > 1 and "s" not in text:
            raw = list(raw[0])
        try:
            return cls(tuple(int(x) for x in raw))
        except ValueError:
            raise ParseError(f"Cannot parse reduced word from {text!r}")


def format_word(letters) -> str:
    if not letters:
        return "e"
    return " ".join(f"s{i}" for i in letters)


def iter_reduced_words(w: Permutation) -> Iterator[ReducedWord]:
    """Reduced words in lexicographic order of letter sequences."""
    prefix: List[int] = []

    def walk(current: Permutation) -> Iterator[ReducedWord]:
        if current.is_identity():
            yield ReducedWord(tuple(prefix))
            return
        for i in current.left_descents():
            prefix.append(i)
            yield from walk(current.swap_values(i, i + 1))
            prefix.pop()

    yield from walk(w)


def reduced_words(w: Permutation, limit: Optional[int] = None) -> List[ReducedWord]:
    words = []
    for word in iter_reduced_words(w):
        words.append(word)
        if limit is not None and len(words) >= limit:
            break
    return words


def distinct_letter_word(w: Permutation) -> Optional[ReducedWord]:
    """Reduced-word search with early exit, pruned on repeated letters."""
    if w.length > w.n - 1:
        return None
    prefix: List[int] = []

    def walk(current: Permutation) -> bool:
        if current.is_identity():
            return True
        for i in current.left_descents():
            if i in prefix:
                continue
            prefix.append(i)
            if walk(current.swap_values(i, i + 1)):
                return True
            prefix.pop()
        return False

    return ReducedWord(tuple(prefix)) if walk(w) else None


def has_distinct_letter_word(w: Permutation) -> bool:
    return distinct_letter_word(w) is not None


def support(w: Permutation) -> FrozenSet[int]:
    """Letters i appearing in every reduced word: w does not stabilise {1..i}."""
    return frozenset(i for i in range(1, w.n) if max(w.images[:i]) != i)
