"""
Lattice polytopes given by their vertices.

Every derived quantity (frame, facets, edges, face lattice) is computed once
per polytope and memoised under a per-object lock. Facets are found by an
exact beneath-beyond pass in lattice coordinates, so all normals are
primitive integer vectors; inward means ``<normal, x> >= offset``.
"""

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import networkx as nx
import sympy

from geometry.lattice import LatticeFrame, affine_rank, frame_for, integer_direction, primitive
from geometry.polynomial import IntPolynomial
from geometry.simplex import segment_meets_hull
from shared.errors import DegenerateInputError, DimensionError, NonGenericFunctionalError
from shared.utils import setup_logger

logger = setup_logger(__name__)

Point = Tuple[int, ...]
VertexKey = Union[int, Sequence[int], Any]


@dataclass(frozen=True)
class Facet:
    normal: Tuple[int, ...]
    offset: int
    vertices: FrozenSet[int]

    def value(self, coords: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.normal, coords)) - self.offset


@dataclass(frozen=True)
class FaceLattice:
    dim: int
    faces: Tuple[FrozenSet[int], ...]
    dims: Tuple[int, ...]

    def f_vector(self) -> List[int]:
        counts = [0] * (self.dim + 1)
        for k in self.dims:
            counts[k] += 1
        return counts

    def faces_of_dim(self, k: int) -> List[FrozenSet[int]]:
        return [face for face, d in zip(self.faces, self.dims) if d == k]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def is_closed_under_intersection(self) -> bool:
        members = set(self.faces)
        return all(
            not (a & b) or (a & b) in members for a, b in itertools.combinations(self.faces, 2)
        )

    def covers(self) -> List[Tuple[int, int]]:
        """Index pairs (i, j) with faces[i] a facet of faces[j]."""
        result = []
        for i, (small, ds) in enumerate(zip(self.faces, self.dims)):
            for j, (big, db) in enumerate(zip(self.faces, self.dims)):
                if db == ds + 1 and small < big:
                    result.append((i, j))
        return result


@dataclass(frozen=True)
class AscentProfile:
    ascents: Dict[int, int]
    face_condition: bool
    failing_vertices: Tuple[int, ...]

    def polynomial(self, squared: bool = False) -> IntPolynomial:
        counts: Dict[int, int] = {}
        for asc in self.ascents.values():
            power = 2 * asc if squared else asc
            counts[power] = counts.get(power, 0) + 1
        return IntPolynomial.from_counts(counts)


def _facet_key(facet: Facet) -> Tuple[Tuple[int, ...], int]:
    return facet.normal, facet.offset


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _hyperplane_through(points: Sequence[Point], inside: Point) -> Tuple[Tuple[int, ...], int]:
    base = points[0]
    rows = [[p[k] - base[k] for k in range(len(base))] for p in points[1:]]
    null = sympy.Matrix(rows).nullspace()
    normal = integer_direction(list(null[0]))
    offset = _dot(normal, base)
    if _dot(normal, inside) < offset:
        normal = tuple(-x for x in normal)
        offset = -offset
    return normal, offset


class _HullBuilder:
    """Beneath-beyond facet enumeration for integer points spanning Z^d affinely."""

    def __init__(self, coords: Sequence[Point], dim: int):
        self.coords = coords
        self.dim = dim
        self.normals: List[Tuple[int, ...]] = []
        self.offsets: List[int] = []
        self.tight: List[set] = []

    def _initial_simplex(self) -> List[int]:
        chosen = [0]
        rows: List[List[int]] = []
        origin = self.coords[0]
        for idx in range(1, len(self.coords)):
            candidate = rows + [[a - b for a, b in zip(self.coords[idx], origin)]]
            if sympy.Matrix(candidate).rank() == len(candidate):
                rows = candidate
                chosen.append(idx)
                if len(chosen) == self.dim + 1:
                    break
        return chosen

    def _add(self, normal: Tuple[int, ...], offset: int, processed: Sequence[int]):
        self.normals.append(normal)
        self.offsets.append(offset)
        self.tight.append({i for i in processed if _dot(normal, self.coords[i]) == offset})

    def _adjacent(self, f: int, g: int) -> bool:
        common = self.tight[f] & self.tight[g]
        if len(common) < self.dim - 1:
            return False
        return not any(
            h not in (f, g) and common <= self.tight[h] for h in range(len(self.normals))
        )

    def build(self) -> List[Tuple[Tuple[int, ...], int, FrozenSet[int]]]:
        simplex = self._initial_simplex()
        for k in simplex:
            others = [self.coords[i] for i in simplex if i != k]
            normal, offset = _hyperplane_through(others, self.coords[k])
            self._add(normal, offset, simplex)
        processed = list(simplex)
        for idx in range(len(self.coords)):
            if idx in simplex:
                continue
            self._insert(idx, processed)
            processed.append(idx)
        return [
            (n, b, frozenset(t)) for n, b, t in zip(self.normals, self.offsets, self.tight)
        ]

    def _insert(self, idx: int, processed: List[int]):
        point = self.coords[idx]
        values = [_dot(n, point) - b for n, b in zip(self.normals, self.offsets)]
        visible = [f for f, v in enumerate(values) if v < 0]
        if not visible:
            for f, v in enumerate(values):
                if v == 0:
                    self.tight[f].add(idx)
            return
        created: Dict[Tuple[Tuple[int, ...], int], None] = {}
        for f in visible:
            for g, value_g in enumerate(values):
                if value_g <= 0 or not self._adjacent(f, g):
                    continue
                value_f = values[f]
                normal = [
                    value_g * a - value_f * b for a, b in zip(self.normals[f], self.normals[g])
                ]
                offset = value_g * self.offsets[f] - value_f * self.offsets[g]
                normal_p = primitive(normal)
                scale = next(a // b for a, b in zip(normal, normal_p) if b)
                created[(normal_p, offset // scale)] = None
        keep = [f for f, v in enumerate(values) if v >= 0]
        self.normals = [self.normals[f] for f in keep]
        self.offsets = [self.offsets[f] for f in keep]
        self.tight = [self.tight[f] | ({idx} if values[f] == 0 else set()) for f in keep]
        members = processed + [idx]
        for normal, offset in created:
            self._add(normal, offset, members)


class LatticePolytope:
    def __init__(
        self,
        vertices: Sequence[Sequence[int]],
        labels: Optional[Sequence[Any]] = None,
        check: bool = True,
    ):
        if not vertices:
            raise DegenerateInputError("A polytope needs at least one vertex")
        self.vertices: Tuple[Point, ...] = tuple(tuple(int(x) for x in v) for v in vertices)
        self.ambient_dim = len(self.vertices[0])
        if any(len(v) != self.ambient_dim for v in self.vertices):
            raise DegenerateInputError("Vertices have different ambient dimensions")
        if len(set(self.vertices)) != len(self.vertices):
            raise DegenerateInputError("Duplicate vertices")
        if labels is not None and len(labels) != len(self.vertices):
            raise DegenerateInputError("One label per vertex is required")
        self.labels: Optional[Tuple[Any, ...]] = tuple(labels) if labels is not None else None
        self._lock = threading.RLock()
        self._memo: Dict[str, Any] = {}
        if check:
            outside = self.non_extreme_points()
            if outside:
                raise DegenerateInputError(
                    f"{len(outside)} points are not vertices, e.g. {self.vertices[outside[0]]}"
                )

    @classmethod
    def from_points(
        cls, points: Sequence[Sequence[int]], labels: Optional[Sequence[Any]] = None
    ) -> "LatticePolytope":
        """Convex hull of the points; non-extreme points (and their labels) are dropped."""
        seen: Dict[Point, int] = {}
        for i, p in enumerate(points):
            seen.setdefault(tuple(int(x) for x in p), i)
        order = sorted(seen.values())
        kept_labels = [labels[i] for i in order] if labels else None
        hull = cls([points[i] for i in order], kept_labels, False)
        keep = set(range(len(order))) - set(hull.non_extreme_points())
        kept = sorted(keep)
        return cls(
            [hull.vertices[i] for i in kept],
            [hull.labels[i] for i in kept] if hull.labels else None,
            check=False,
        )

    def _cached(self, key: str, compute: Callable[[], Any]) -> Any:
        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolytope(ambient_dim={self.ambient_dim}, vertices={len(self.vertices)})"

    # ------------------------------------------------------------------ frame

    @property
    def frame(self) -> LatticeFrame:
        return self._cached("frame", lambda: frame_for(self.vertices))

    @property
    def dim(self) -> int:
        return self.frame.dim

    @property
    def coords(self) -> Tuple[Point, ...]:
        return self._cached(
            "coords", lambda: tuple(self.frame.coordinates(v) for v in self.vertices)
        )

    def vertex_index(self, key: VertexKey) -> int:
        if isinstance(key, int):
            return key
        if isinstance(key, (tuple, list)):
            return self.vertices.index(tuple(key))
        if self.labels is not None:
            for i, label in enumerate(self.labels):
                if label == key or str(label) == str(key):
                    return i
        raise KeyError(f"No vertex {key!r}")

    # ----------------------------------------------------------------- facets

    def facets(self) -> List[Facet]:
        return self._cached("facets", self._compute_facets)

    def _compute_facets(self) -> List[Facet]:
        dim = self.dim
        if dim < 1:
            raise DimensionError("Facets need dimension >= 1")
        coords = self.coords
        if dim == 1:
            values = [c[0] for c in coords]
            low, high = min(values), max(values)
            return [
                Facet((1,), low, frozenset(i for i, v in enumerate(values) if v == low)),
                Facet((-1,), -high, frozenset(i for i, v in enumerate(values) if v == high)),
            ]
        raw = _HullBuilder(coords, dim).build()
        facets = sorted((Facet(n, b, t) for n, b, t in raw), key=_facet_key)
        logger.debug(f"Found {len(facets)} facets for {self!r}")
        return facets

    def facets_bruteforce(self) -> List[Facet]:
        """Hyperplanes through affinely independent vertex subsets with all vertices on one side."""
        dim = self.dim
        if dim < 1:
            raise DimensionError("Facets need dimension >= 1")
        coords = self.coords
        found: Dict[Tuple[Tuple[int, ...], int], FrozenSet[int]] = {}
        for subset in itertools.combinations(range(len(coords)), dim):
            points = [coords[i] for i in subset]
            if affine_rank(points) != dim - 1:
                continue
            rows = [[p[k] - points[0][k] for k in range(dim)] for p in points[1:]]
            null = sympy.Matrix(rows).nullspace() if rows else [sympy.Matrix([1])]
            normal = integer_direction(list(null[0]))
            offset = _dot(normal, points[0])
            values = [_dot(normal, c) - offset for c in coords]
            if all(v >= 0 for v in values):
                pass
            elif all(v <= 0 for v in values):
                normal = tuple(-x for x in normal)
                offset = -offset
            else:
                continue
            tight = frozenset(i for i, c in enumerate(coords) if _dot(normal, c) == offset)
            if len(tight) < len(coords):
                found[(normal, offset)] = tight
        return sorted((Facet(n, b, t) for (n, b), t in found.items()), key=_facet_key)

    def vertex_facets(self) -> List[FrozenSet[int]]:
        def compute():
            incident: List[set] = [set() for _ in self.vertices]
            for f, facet in enumerate(self.facets()):
                for i in facet.vertices:
                    incident[i].add(f)
            return [frozenset(s) for s in incident]

        return self._cached("vertex_facets", compute)

    def non_extreme_points(self) -> List[int]:
        """Indices whose smallest containing face is not a single point."""
        if self.dim == 0:
            return []
        facets = self.facets()
        result = []
        for i, incident in enumerate(self.vertex_facets()):
            if not incident:
                result.append(i)
                continue
            face = frozenset(range(len(self.vertices)))
            for f in incident:
                face &= facets[f].vertices
            if face != {i}:
                result.append(i)
        return result

    # ------------------------------------------------------------------ edges

    def _facet_face(self, facet_ids) -> FrozenSet[int]:
        facets = self.facets()
        face = frozenset(range(len(self.vertices)))
        for f in facet_ids:
            face &= facets[f].vertices
        return face

    def edges(self, method: str = "facets") -> List[Tuple[int, int]]:
        if len(self.vertices) < 2:
            raise DegenerateInputError("Edges need at least two vertices")
        if method == "lp":
            return self._cached("edges_lp", self._edges_lp)
        return self._cached("edges", self._edges_from_facets)

    def _edges_from_facets(self) -> List[Tuple[int, int]]:
        if self.dim == 1:
            facets = self.facets()
            return [tuple(sorted((min(facets[0].vertices), min(facets[1].vertices))))]
        incident = self.vertex_facets()
        result = []
        for i, j in itertools.combinations(range(len(self.vertices)), 2):
            common = incident[i] & incident[j]
            if len(common) < self.dim - 1:
                continue
            if self._facet_face(common) == {i, j}:
                result.append((i, j))
        return result

    def _edges_lp(self) -> List[Tuple[int, int]]:
        result = []
        for i, j in itertools.combinations(range(len(self.vertices)), 2):
            others = [v for k, v in enumerate(self.vertices) if k not in (i, j)]
            if segment_meets_hull(self.vertices[i], self.vertices[j], others) is None:
                result.append((i, j))
        return result

    def edge_certificate(self, i: int, j: int) -> Tuple[Tuple[int, ...], int]:
        """Functional in frame coordinates, minimised on exactly the vertices i and j."""
        if (min(i, j), max(i, j)) not in set(self.edges()):
            raise DegenerateInputError(f"({i}, {j}) is not an edge")
        facets = self.facets()
        common = self.vertex_facets()[i] & self.vertex_facets()[j]
        functional = [0] * self.dim
        for f in common:
            functional = [a + b for a, b in zip(functional, facets[f].normal)]
        return tuple(functional), _dot(functional, self.coords[i])

    def non_edge_certificate(self, i: int, j: int) -> Optional[List[Fraction]]:
        """[alpha, beta, mu...] placing a point of segment ij inside the hull of the rest."""
        others = [v for k, v in enumerate(self.vertices) if k not in (i, j)]
        return segment_meets_hull(self.vertices[i], self.vertices[j], others)

    def neighbors(self, i: int) -> List[int]:
        def compute():
            adjacency: Dict[int, List[int]] = {k: [] for k in range(len(self.vertices))}
            if len(self.vertices) > 1:
                for a, b in self.edges():
                    adjacency[a].append(b)
                    adjacency[b].append(a)
            return adjacency

        return self._cached("adjacency", compute)[i]

    def degree(self, key: VertexKey) -> int:
        return len(self.neighbors(self.vertex_index(key)))

    # ---------------------------------------------------------- face lattice

    def face_lattice(self) -> FaceLattice:
        return self._cached("face_lattice", self._compute_face_lattice)

    def _compute_face_lattice(self) -> FaceLattice:
        everything = frozenset(range(len(self.vertices)))
        if self.dim == 0:
            return FaceLattice(0, (everything,), (0,))
        facet_sets = [facet.vertices for facet in self.facets()]
        faces = set(facet_sets)
        queue = list(facet_sets)
        while queue:
            face = queue.pop()
            for facet in facet_sets:
                meet = face & facet
                if meet and meet not in faces:
                    faces.add(meet)
                    queue.append(meet)
        faces.add(everything)
        ordered = sorted(faces, key=lambda s: (len(s), sorted(s)))
        dims: Dict[FrozenSet[int], int] = {}
        for face in ordered:
            below = [dims[g] for g in dims if len(g) < len(face) and g < face]
            dims[face] = 1 + max(below) if below else 0
        ordered = sorted(ordered, key=lambda s: (dims[s], sorted(s)))
        return FaceLattice(self.dim, tuple(ordered), tuple(dims[s] for s in ordered))

    def f_polynomial(self) -> IntPolynomial:
        return IntPolynomial(tuple(self.face_lattice().f_vector()))

    def h_polynomial(self) -> IntPolynomial:
        return self.f_polynomial().shift(-1)

    # ------------------------------------------------------------ predicates

    def is_simple_at(self, key: VertexKey) -> bool:
        if self.dim == 0:
            return True
        return self.degree(key) == self.dim

    def is_simple(self) -> bool:
        return all(self.is_simple_at(i) for i in range(len(self.vertices)))

    def is_cube(self) -> bool:
        """Simple, every 2-face a quadrilateral, and 2^dim vertices."""
        if len(self.vertices) != 2 ** self.dim:
            return False
        if self.dim <= 1:
            return True
        if not self.is_simple():
            return False
        return all(len(face) == 4 for face in self.face_lattice().faces_of_dim(2))

    def edge_directions_are_roots(self) -> bool:
        if len(self.vertices) < 2:
            return True
        for i, j in self.edges():
            direction = [a - b for a, b in zip(self.vertices[j], self.vertices[i])]
            support = [x for x in direction if x]
            if len(support) != 2 or support[0] != -support[1]:
                return False
        return True

    def ascent_profile(self, functional: Sequence[int]) -> AscentProfile:
        """Per-vertex count of edges along which <functional, x> increases."""
        ascents = {i: 0 for i in range(len(self.vertices))}
        rising: Dict[int, List[int]] = {i: [] for i in range(len(self.vertices))}
        if len(self.vertices) > 1:
            for i, j in self.edges():
                delta = _dot(functional, self.vertices[j]) - _dot(functional, self.vertices[i])
                if delta == 0:
                    raise NonGenericFunctionalError(
                        f"Functional {tuple(functional)} is constant on edge "
                        f"{self.vertices[i]} - {self.vertices[j]}"
                    )
                low, high = (i, j) if delta > 0 else (j, i)
                ascents[low] += 1
                rising[low].append(high)
        failing = tuple(i for i in ascents if not self._ascent_face_ok(i, rising[i]))
        return AscentProfile(ascents, not failing, failing)

    def _ascent_face_ok(self, i: int, upper: List[int]) -> bool:
        if not upper:
            return True
        points = [self.coords[i]] + [self.coords[j] for j in upper]
        if affine_rank(points) != len(upper):
            return False
        if self.dim == 0 or len(self.vertices) < 2:
            return True
        incident = self.vertex_facets()
        common = incident[i]
        for j in upper:
            common = common & incident[j]
        face = self._facet_face(common) if common else frozenset(range(len(self.vertices)))
        if affine_rank([self.coords[k] for k in sorted(face)]) != len(upper):
            return False
        return {k for k in self.neighbors(i) if k in face} == set(upper)

    # ----------------------------------------------------------------- export

    def to_dict(self) -> dict:
        data: Dict[str, Any] = {
            "ambient_dim": self.ambient_dim,
            "vertices": [list(v) for v in self.vertices],
        }
        if self.labels is not None:
            data["labels"] = [str(label) for label in self.labels]
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "LatticePolytope":
        return cls.from_points(data["vertices"], data.get("labels"))

    def incidence_graph(self) -> nx.Graph:
        graph = nx.Graph()
        for i in range(len(self.vertices)):
            graph.add_node(("v", i), kind="vertex")
        for f, facet in enumerate(self.facets()):
            graph.add_node(("f", f), kind="facet")
            for i in facet.vertices:
                graph.add_edge(("v", i), ("f", f))
        return graph


# ----------------------------------------------------------- module helpers


def polytope_dim(polytope: LatticePolytope) -> int:
    return polytope.dim


def combinatorially_equivalent(first: LatticePolytope, second: LatticePolytope) -> bool:
    """Isomorphism of vertex-facet incidences."""
    if first.dim != second.dim or len(first) != len(second):
        return False
    if first.dim == 0:
        return True
    if len(first.facets()) != len(second.facets()):
        return False
    if sorted(map(len, first.vertex_facets())) != sorted(map(len, second.vertex_facets())):
        return False
    return nx.is_isomorphic(
        first.incidence_graph(),
        second.incidence_graph(),
        node_match=lambda a, b: a["kind"] == b["kind"],
    )


def product(first: LatticePolytope, second: LatticePolytope) -> LatticePolytope:
    vertices = [a + b for a in first.vertices for b in second.vertices]
    labels = None
    if first.labels is not None and second.labels is not None:
        labels = [(x, y) for x in first.labels for y in second.labels]
    return LatticePolytope(vertices, labels, check=False)


def cube(d: int) -> LatticePolytope:
    return LatticePolytope(list(itertools.product((0, 1), repeat=d)), check=False)


def simplex(d: int) -> LatticePolytope:
    points = [tuple(0 for _ in range(d))]
    points += [tuple(int(i == k) for i in range(d)) for k in range(d)]
    return LatticePolytope(points, check=False)


def cross_polytope(d: int) -> LatticePolytope:
    points = []
    for k in range(d):
        for sign in (1, -1):
            points.append(tuple(sign if i == k else 0 for i in range(d)))
    return LatticePolytope(points, check=False)


def segment(length: int = 1) -> LatticePolytope:
    return LatticePolytope([(0,), (length,)], check=False)
