"""
Rational polyhedral fans given by primitive rays and maximal cones.

Cones are frozensets of ray indices. Faces of a simplicial fan are all
subsets of its maximal cones.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import sympy

from geometry.polytope import LatticePolytope
from geometry.simplex import cone_interiors_meet
from shared.errors import DimensionError, NonSmoothFanError, RankMismatchError
from shared.utils import setup_logger

logger = setup_logger(__name__)

Ray = Tuple[int, ...]
Cone = FrozenSet[int]


def _fraction_inverse(columns: Sequence[Ray]) -> List[List[Fraction]]:
    inverse = sympy.Matrix(columns).T.inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inverse.row(i)] for i in range(inverse.rows)]


def _apply(matrix: List[List[Fraction]], vector: Sequence[int]) -> List[Fraction]:
    return [sum(a * b for a, b in zip(row, vector)) for row in matrix]


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: Tuple[Ray, ...]
    cones: Tuple[Cone, ...]
    labels: Optional[Tuple[Any, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(tuple(int(x) for x in r) for r in self.rays))
        object.__setattr__(self, "cones", tuple(frozenset(c) for c in self.cones))
        if any(len(r) != self.rank for r in self.rays):
            raise RankMismatchError(f"Every ray must have {self.rank} coordinates")

    @classmethod
    def from_dict(cls, data: dict) -> "Fan":
        return cls(
            int(data["rank"]),
            tuple(tuple(r) for r in data["rays"]),
            tuple(frozenset(c) for c in data["cones"]),
        )

    def to_dict(self) -> dict:
        data: Dict[str, Any] = {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "cones": [sorted(c) for c in self.cones],
        }
        if self.labels is not None:
            data["labels"] = [str(label) for label in self.labels]
        return data

    def cone_rays(self, cone: Cone) -> List[Ray]:
        return [self.rays[i] for i in sorted(cone)]

    @cached_property
    def ray_degrees(self) -> Tuple[int, ...]:
        """Number of maximal cones containing each ray."""
        return tuple(sum(1 for c in self.cones if i in c) for i in range(len(self.rays)))

    def is_simplicial(self) -> bool:
        return all(
            sympy.Matrix(self.cone_rays(c)).rank() == len(c) for c in self.cones if c
        )

    def is_smooth(self) -> bool:
        """Every maximal cone is generated by a lattice basis."""
        for cone in self.cones:
            if len(cone) != self.rank:
                return False
            if abs(sympy.Matrix(self.cone_rays(cone)).det()) != 1:
                return False
        return True

    def _require_smooth(self):
        if not self.is_smooth():
            raise NonSmoothFanError("The fan is not smooth")

    @cached_property
    def _inverses(self) -> Dict[Cone, Tuple[List[int], List[List[Fraction]]]]:
        return {
            cone: (sorted(cone), _fraction_inverse(self.cone_rays(cone))) for cone in self.cones
        }

    @cached_property
    def faces(self) -> FrozenSet[Cone]:
        result = set()
        for cone in self.cones:
            members = sorted(cone)
            for k in range(len(members) + 1):
                for subset in itertools.combinations(members, k):
                    result.add(frozenset(subset))
        return frozenset(result)

    def primitive_collections(self) -> List[Tuple[int, ...]]:
        """Minimal ray sets that do not span a cone."""
        self._require_smooth()
        faces = self.faces
        found = set()
        for face in faces:
            for ray in range(len(self.rays)):
                if ray in face:
                    continue
                candidate = face | {ray}
                if candidate in faces:
                    continue
                if all(candidate - {x} in faces for x in candidate):
                    found.add(candidate)
        return sorted(tuple(sorted(c)) for c in found)

    def primitive_relation(self, collection: Sequence[int]) -> Dict[int, int]:
        """Coefficients a_i with sum(collection) = sum a_i u_i in the smallest cone holding it."""
        self._require_smooth()
        total = [sum(self.rays[i][k] for i in collection) for k in range(self.rank)]
        if not any(total):
            return {}
        for members, inverse in self._inverses.values():
            coefficients = _apply(inverse, total)
            if all(c >= 0 for c in coefficients):
                return {ray: int(c) for ray, c in zip(members, coefficients) if c > 0}
        raise NonSmoothFanError(f"Sum of {tuple(collection)} lies in no cone")

    def batyrev_degree(self, collection: Sequence[int]) -> int:
        return len(collection) - sum(self.primitive_relation(collection).values())

    def is_fano(self) -> bool:
        return all(self.batyrev_degree(c) > 0 for c in self.primitive_collections())

    def is_weak_fano(self) -> bool:
        return all(self.batyrev_degree(c) >= 0 for c in self.primitive_collections())

    def is_complete(self, samples: int = 64, seed: int = 0) -> bool:
        """Walls shared by exactly two cones on opposite sides, plus a sampled covering check."""
        if not self.cones or any(len(c) != self.rank for c in self.cones):
            return False
        if not self.is_simplicial():
            return False
        if self.rank == 1:
            signs = sorted(self.rays[next(iter(c))][0] > 0 for c in self.cones)
            return signs == [False, True]
        walls: Dict[Cone, List[int]] = {}
        for cone in self.cones:
            for ray in cone:
                walls.setdefault(cone - {ray}, []).append(ray)
        for wall, outside in walls.items():
            if len(outside) != 2:
                return False
            normal = sympy.Matrix(self.cone_rays(wall)).nullspace()[0]
            sides = [sum(normal[k] * self.rays[r][k] for k in range(self.rank)) for r in outside]
            if sides[0] * sides[1] >= 0:
                return False
        rng = random.Random(seed)
        for _ in range(samples):
            point = [rng.randint(-50, 50) for _ in range(self.rank)]
            hits = 0
            for _, inverse in self._inverses.values():
                coefficients = _apply(inverse, point)
                if all(c >= 0 for c in coefficients):
                    hits += 1
                    if all(c > 0 for c in coefficients) and hits > 1:
                        return False
            if hits == 0:
                return False
        return True

    def interiors_disjoint(self) -> bool:
        """Pairwise exact LP separation of maximal cone interiors."""
        for first, second in itertools.combinations(self.cones, 2):
            if cone_interiors_meet(self.cone_rays(first), self.cone_rays(second)):
                logger.info(f"Cones {sorted(first)} and {sorted(second)} overlap")
                return False
        return True


def normal_fan(polytope: LatticePolytope) -> Fan:
    """Inward facet normals in the lattice frame of the polytope; one maximal cone per vertex."""
    if polytope.dim == 0:
        raise DimensionError("A point has no normal fan")
    if not polytope.frame.exact_lattice:
        raise DimensionError("The affine hull has no root or identity lattice frame")
    facets = polytope.facets()
    return Fan(
        polytope.dim,
        tuple(f.normal for f in facets),
        tuple(polytope.vertex_facets()),
        polytope.labels,
    )


def _independent_subset(rays: Sequence[Ray], members: Sequence[int], rank: int) -> List[int]:
    chosen: List[int] = []
    for index in members:
        candidate = chosen + [index]
        if sympy.Matrix([rays[i] for i in candidate]).rank() == len(candidate):
            chosen = candidate
            if len(chosen) == rank:
                break
    return chosen


def fan_isomorphic(first: Fan, second: Fan) -> bool:
    """
    Search for a lattice automorphism mapping rays to rays and cones to cones.
    A basis inside one maximal cone of the first fan must land on rays of some
    maximal cone of the second, which fixes the candidate map.
    """
    if first.rank != second.rank:
        raise RankMismatchError(f"Fans of rank {first.rank} and {second.rank}")
    if len(first.rays) != len(second.rays) or len(first.cones) != len(second.cones):
        return False
    if sorted(map(len, first.cones)) != sorted(map(len, second.cones)):
        return False
    if sorted(first.ray_degrees) != sorted(second.ray_degrees):
        return False
    rank = first.rank
    source = None
    for cone in sorted(first.cones, key=lambda c: (len(c), sorted(c))):
        basis = _independent_subset(first.rays, sorted(cone), rank)
        if len(basis) == rank:
            source = (cone, basis)
            break
    if source is None:
        raise DimensionError("No maximal cone of the first fan is full-dimensional")
    cone, basis = source
    inverse = _fraction_inverse([first.rays[i] for i in basis])
    det_source = abs(sympy.Matrix([first.rays[i] for i in basis]).det())
    coordinates = [_apply(inverse, ray) for ray in first.rays]
    targets = {ray: i for i, ray in enumerate(second.rays)}
    target_cones = set(second.cones)
    deg1, deg2 = first.ray_degrees, second.ray_degrees

    for tau in second.cones:
        if len(tau) != len(cone):
            continue
        for images in itertools.permutations(sorted(tau), rank):
            if any(deg1[b] != deg2[t] for b, t in zip(basis, images)):
                continue
            image_rays = [second.rays[t] for t in images]
            if abs(sympy.Matrix(image_rays).det()) != det_source:
                continue
            mapping = _map_rays(coordinates, image_rays, targets, deg1, deg2)
            if mapping is None:
                continue
            if not _integral(inverse, image_rays, rank):
                continue
            mapped = {frozenset(mapping[i] for i in c) for c in first.cones}
            if mapped == target_cones:
                return True
    return False


def _map_rays(coordinates, image_rays, targets, deg1, deg2) -> Optional[List[int]]:
    mapping = []
    used = set()
    rank = len(image_rays[0])
    for index, coefficients in enumerate(coordinates):
        image = [sum(c * r[k] for c, r in zip(coefficients, image_rays)) for k in range(rank)]
        if any(x.denominator != 1 for x in map(Fraction, image)):
            return None
        target = targets.get(tuple(int(x) for x in image))
        if target is None or target in used or deg1[index] != deg2[target]:
            return None
        used.add(target)
        mapping.append(target)
    return mapping


def _integral(inverse: List[List[Fraction]], image_rays: List[Ray], rank: int) -> bool:
    """M = B2 B1^-1 has integer entries."""
    for row in range(rank):
        for col in range(rank):
            entry = sum(image_rays[k][row] * inverse[k][col] for k in range(rank))
            if Fraction(entry).denominator != 1:
                return False
    return True


def primitive_collections(fan: Fan) -> List[Tuple[int, ...]]:
    return fan.primitive_collections()


def batyrev_degree(fan: Fan, collection: Sequence[int]) -> int:
    return fan.batyrev_degree(collection)


def is_fano(fan: Fan) -> bool:
    return fan.is_fano()


def is_weak_fano(fan: Fan) -> bool:
    return fan.is_weak_fano()
