"""
Integer coordinates on the affine hull of a point set.

Three kinds of frame:

  - ``identity``: the points are full-dimensional.
  - ``root``: the affine hull is cut out by fixing the coordinate sum on blocks
    of coordinates. The basis e_{c_k} - e_{c_{k+1}} of each block is a lattice
    basis and the coordinates are the partial sums x_{c_1} + ... + x_{c_k}.
    For the hyperplane x_1 + ... + x_n = const these are the pairings with
    e_1 + ... + e_k, i.e. the quotient lattice Z^n / Z(1, ..., 1).
  - ``projection``: coordinate projection onto pivot coordinates. Injective on
    the affine hull, fine for combinatorics but not a lattice basis.
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Sequence, Tuple

import networkx as nx
import sympy

from shared.errors import DimensionError

Point = Tuple[int, ...]

IDENTITY = "identity"
ROOT = "root"
PROJECTION = "projection"


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    if len(points) <= 1:
        return 0
    origin = points[0]
    rows = [[p[k] - origin[k] for k in range(len(origin))] for p in points[1:]]
    return sympy.Matrix(rows).rank()


def primitive(vector: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in vector:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in vector)
    return tuple(int(x) // g for x in vector)


def integer_direction(vector: Sequence) -> Tuple[int, ...]:
    """Clear denominators of a rational vector and make it primitive."""
    entries = [sympy.Rational(x) for x in vector]
    scale = sympy.ilcm(*[e.q for e in entries]) if entries else 1
    return primitive([int(e * scale) for e in entries])


@dataclass(frozen=True)
class LatticeFrame:
    kind: str
    ambient_dim: int
    dim: int
    blocks: Tuple[Tuple[int, ...], ...] = ()
    pivots: Tuple[int, ...] = ()

    @property
    def exact_lattice(self) -> bool:
        return self.kind in (IDENTITY, ROOT)

    def coordinates(self, point: Sequence[int]) -> Point:
        if self.kind == IDENTITY:
            return tuple(int(x) for x in point)
        if self.kind == ROOT:
            coords: List[int] = []
            for block in self.blocks:
                running = 0
                for index in block[:-1]:
                    running += point[index]
                    coords.append(running)
            return tuple(coords)
        return tuple(int(point[k]) for k in self.pivots)

    def basis(self) -> List[Point]:
        """Ambient images of the coordinate directions (root and identity frames)."""
        if self.kind == IDENTITY:
            return [tuple(int(i == k) for i in range(self.ambient_dim)) for k in range(self.dim)]
        if self.kind != ROOT:
            raise DimensionError("A projection frame has no lattice basis")
        vectors = []
        for block in self.blocks:
            for a, b in zip(block, block[1:]):
                vectors.append(
                    tuple(1 if i == a else -1 if i == b else 0 for i in range(self.ambient_dim))
                )
        return vectors


def frame_for(points: Sequence[Sequence[int]]) -> LatticeFrame:
    if not points:
        raise DimensionError("Cannot frame an empty point set")
    ambient = len(points[0])
    dim = affine_rank(points)
    if dim == ambient:
        return LatticeFrame(IDENTITY, ambient, dim)

    origin = points[0]
    differences = [[p[k] - origin[k] for k in range(ambient)] for p in points[1:]]
    support_graph = nx.Graph()
    for diff in differences:
        support = [k for k in range(ambient) if diff[k]]
        support_graph.add_nodes_from(support)
        support_graph.add_edges_from(zip(support, support[1:]))
    blocks = tuple(
        tuple(sorted(component)) for component in nx.connected_components(support_graph)
    )
    balanced = all(sum(diff[k] for k in block) == 0 for diff in differences for block in blocks)
    blocks = tuple(sorted(b for b in blocks if len(b) > 1))
    if balanced and sum(len(b) - 1 for b in blocks) == dim:
        return LatticeFrame(ROOT, ambient, dim, blocks=blocks)

    _, pivots = sympy.Matrix(differences).rref()
    return LatticeFrame(PROJECTION, ambient, dim, pivots=tuple(pivots))
