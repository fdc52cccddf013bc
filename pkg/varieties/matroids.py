"""
Coxeter matroids of S_n: the Maximality Property, the three retractions and
the graph metric on the Bruhat graph.

Elements may be signed permutations for the algebraic retraction only.
"""

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from combinatorics.bruhat import images_leq
from combinatorics.permutation import Permutation, all_permutations, check_rank
from combinatorics.signed import SignedPermutation
from geometry.polytope import LatticePolytope
from shared.errors import DegenerateInputError, NotAMatroidError, ParseError, RankMismatchError
from shared.utils import setup_logger
from varieties.moment import moment_image, moment_polytope_of

logger = setup_logger(__name__)

Element = Union[Permutation, SignedPermutation]
Images = Tuple[int, ...]

FANO_LINES: Tuple[FrozenSet[int], ...] = tuple(
    frozenset(int(c) for c in line) for line in ("124", "135", "167", "236", "257", "347", "456")
)


@dataclass(frozen=True)
class CoxeterSubset:
    n: int
    elements: FrozenSet[Element]

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        if not self.elements:
            raise DegenerateInputError("A Coxeter subset needs at least one element")
        if any(m.n != self.n for m in self.elements):
            raise RankMismatchError(f"Every element must lie in rank {self.n}")

    @classmethod
    def of(cls, elements: Iterable[Union[str, Element]]) -> "CoxeterSubset":
        parsed = [
            m if isinstance(m, (Permutation, SignedPermutation)) else _parse(m) for m in elements
        ]
        if not parsed:
            raise DegenerateInputError("A Coxeter subset needs at least one element")
        return cls(parsed[0].n, frozenset(parsed))

    @classmethod
    def from_dict(cls, data: dict) -> "CoxeterSubset":
        subset = cls.of(data["elements"])
        if "n" in data and int(data["n"]) != subset.n:
            raise RankMismatchError(f"Declared n={data['n']} but elements have rank {subset.n}")
        return subset

    def to_dict(self) -> dict:
        return {"n": self.n, "elements": [m.format() for m in self.sorted()]}

    def sorted(self) -> List[Element]:
        return sorted(self.elements, key=lambda m: m.images)

    @property
    def signed(self) -> bool:
        return any(isinstance(m, SignedPermutation) for m in self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.sorted())

    def __contains__(self, item: Element) -> bool:
        return item in self.elements

    def _require_type_a(self):
        if self.signed:
            raise ParseError("This operation needs ordinary permutations")


def _parse(text: str) -> Element:
    return SignedPermutation.parse(text) if "-" in text else Permutation.parse(text)


@dataclass
class MatroidCheck:
    is_matroid: bool
    witness: Optional[Permutation] = None
    maxima: List[Permutation] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "is_matroid": self.is_matroid,
            "witness": self.witness.format() if self.witness else None,
            "maxima": [m.format() for m in self.maxima],
        }


# ----------------------------------------------------------- maximality test


def _relative(u_inverse: Images, m: Images) -> Images:
    return tuple(u_inverse[x - 1] for x in m)


def _minimum_fails(elements: Sequence[Images], u_inverse: Images) -> bool:
    relative = [_relative(u_inverse, m) for m in elements]
    candidate = min(relative)
    return not all(images_leq(candidate, r) for r in relative)


def _first_failure(elements: Sequence[Images], chunk: Sequence[Images]) -> Optional[Images]:
    """First u in the chunk whose <=^u-minimum does not exist."""
    for u_images in chunk:
        u_inverse = Permutation(u_images).inverse.images
        if _minimum_fails(elements, u_inverse):
            return u_images
    return None


def maxima_at(subset: CoxeterSubset, u: Permutation) -> List[Permutation]:
    """<=^u-maximal elements of the subset."""
    inv = u.inverse.images
    relative = {m: _relative(inv, m.images) for m in subset.elements}
    result = []
    for m, rm in relative.items():
        if not any(other != m and images_leq(rm, ro) for other, ro in relative.items()):
            result.append(m)
    return sorted(result)


def _maximality_witness(subset: CoxeterSubset) -> MatroidCheck:
    for u in all_permutations(subset.n):
        maxima = maxima_at(subset, u)
        if len(maxima) != 1:
            return MatroidCheck(False, u, maxima)
    # minimality at u fails exactly when maximality at u w0 fails
    raise NotAMatroidError("Minimality and maximality searches disagree")


def is_coxeter_matroid(
    subset: CoxeterSubset, jobs: int = 1, progress: bool = False
) -> MatroidCheck:
    """
    Maximality Property test. Every u is first checked through its lexicographic
    <=^u-minimum candidate; on failure an exhaustive maximality search over S_n
    produces the first witness u with several incomparable maxima.
    """
    subset._require_type_a()
    elements = [m.images for m in subset.sorted()]
    universe = [u.images for u in all_permutations(subset.n)]
    chunk_size = max(1, len(universe) // (4 * max(jobs, 1)))
    chunks = [universe[i : i + chunk_size] for i in range(0, len(universe), chunk_size)]

    failed = False
    if jobs > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_first_failure, itertools.repeat(elements), chunks)
            for found in tqdm(results, total=len(chunks), disable=not progress, desc="matroid"):
                failed = failed or found is not None
    else:
        for chunk in tqdm(chunks, disable=not progress, desc="matroid"):
            if _first_failure(elements, chunk) is not None:
                failed = True
                break
    if not failed:
        logger.debug(f"{len(subset)} elements satisfy the Maximality Property")
        return MatroidCheck(True)
    return _maximality_witness(subset)


# --------------------------------------------------------------- retractions


def matroid_retraction(subset: CoxeterSubset, u: Permutation) -> Permutation:
    """The <=^u-minimum of the subset."""
    subset._require_type_a()
    check_rank(u, next(iter(subset.elements)))
    inv = u.inverse.images
    ranked = sorted((_relative(inv, m.images), m) for m in subset.elements)
    candidate = ranked[0]
    if not all(images_leq(candidate[0], r) for r, _ in ranked):
        raise NotAMatroidError(f"No <={u.format()}-minimum; the subset is not a Coxeter matroid", u)
    return candidate[1]


def algebraic_retraction(subset: CoxeterSubset, u: Element) -> Element:
    """Lexicographic minimum of the subset in the alphabet ordered by u."""
    if isinstance(u, SignedPermutation):
        rank = {letter: k for k, letter in enumerate(u.alphabet())}
    else:
        rank = {u(i): i for i in range(1, u.n + 1)}
    if u.n != subset.n:
        raise RankMismatchError(f"Rank mismatch: {u.n} vs {subset.n}")
    try:
        return min(subset.elements, key=lambda m: tuple(rank[x] for x in m.images))
    except KeyError:
        raise ParseError("Signed elements need a signed reference permutation")


def moment_retraction(subset: CoxeterSubset, u: Permutation) -> Permutation:
    """The element y maximising <mu(u), mu(y)>; the vertex of the moment polytope picked by C(u)."""
    subset._require_type_a()
    direction = moment_image(u)
    scored = sorted(
        ((-sum(a * b for a, b in zip(direction, moment_image(m))), m) for m in subset.elements),
        key=lambda pair: (pair[0], pair[1].images),
    )
    if len(scored) > 1 and scored[0][0] == scored[1][0]:
        raise NotAMatroidError(f"Chamber of {u.format()} meets several vertices", u)
    return scored[0][1]


RETRACTIONS = {
    "matroid": matroid_retraction,
    "algebraic": algebraic_retraction,
    "moment": moment_retraction,
}


def retraction_table(
    subset: CoxeterSubset, kind: str = "matroid", domain: Optional[Iterable[Permutation]] = None
) -> Dict[Permutation, Element]:
    if kind not in RETRACTIONS:
        raise ParseError(f"Unknown retraction {kind!r}; expected one of {sorted(RETRACTIONS)}")
    retract = RETRACTIONS[kind]
    points = list(domain) if domain is not None else list(all_permutations(subset.n))
    return {u: retract(subset, u) for u in points}


def table_rows(table: Mapping[Permutation, Element]) -> List[Tuple[str, str]]:
    return [(u.format(), r.format()) for u, r in sorted(table.items(), key=lambda kv: kv[0].images)]


def limit_retraction(
    support: Mapping[int, Iterable[FrozenSet[int]]], u: Permutation
) -> Permutation:
    """
    Fixed point reached by lambda_u(t) x as t -> 0: in every I_d take the subset of
    least weight sum 2^{u^-1(j)}, then read off w(d) from consecutive differences.
    """
    inv = u.inverse
    previous: FrozenSet[int] = frozenset()
    images = []
    for d in range(1, u.n + 1):
        best = min(support[d], key=lambda s: sum(2 ** inv(j) for j in s))
        if not previous <= best:
            raise NotAMatroidError(f"Minimal Pluecker subsets are not nested at d={d}", u)
        (value,) = best - previous
        images.append(value)
        previous = best
    return Permutation(tuple(images))


# ------------------------------------------------------------------- metric


def graph_distance(v: Permutation, w: Permutation) -> int:
    """d(v, w) = l(v^-1 w)."""
    check_rank(v, w)
    return (v.inverse * w).length


def distance_to_set(u: Permutation, subset: CoxeterSubset) -> Tuple[int, List[Permutation]]:
    subset._require_type_a()
    distances = {m: graph_distance(u, m) for m in subset.elements}
    best = min(distances.values())
    return best, sorted(m for m, d in distances.items() if d == best)


# ------------------------------------------------------------------ polytope


def matroid_polytope(subset: CoxeterSubset, nu: Optional[Sequence[int]] = None) -> LatticePolytope:
    """Conv{w . nu : w in M}."""
    subset._require_type_a()
    nu = tuple(nu) if nu is not None else tuple(range(1, subset.n + 1))
    if len(nu) != subset.n:
        raise RankMismatchError(f"nu has {len(nu)} entries, expected {subset.n}")
    if any(a >= b for a, b in zip(nu, nu[1:])):
        raise DegenerateInputError(f"nu must be strictly increasing, got {nu}")
    return moment_polytope_of(subset.elements, nu)


def gelfand_serganova_check(subset: CoxeterSubset, nu: Optional[Sequence[int]] = None) -> dict:
    matroid = is_coxeter_matroid(subset)
    phi = matroid_polytope(subset, nu).edge_directions_are_roots()
    return {
        "is_matroid": matroid.is_matroid,
        "phi_polytope": phi,
        "agree": matroid.is_matroid == phi,
        "witness": matroid.witness.format() if matroid.witness else None,
    }


def fano_plane_matroid() -> CoxeterSubset:
    """w in S_7 with {w(1), w(2), w(3)} not a line of the Fano plane."""
    members = [w for w in all_permutations(7) if frozenset(w.images[:3]) not in FANO_LINES]
    return CoxeterSubset(7, frozenset(members))


# --------------------------------------------------------- closest points


def closest_point_conditions(subset: CoxeterSubset) -> bool:
    """Every u has a unique closest element and it is the algebraic retraction."""
    for u in all_permutations(subset.n):
        _, closest = distance_to_set(u, subset)
        if len(closest) != 1 or closest[0] != algebraic_retraction(subset, u):
            return False
    return True


def closest_point_problem_search(
    n: int,
    max_size: int = 4,
    samples: Optional[int] = None,
    seed: int = 0,
    progress: bool = False,
) -> dict:
    """
    Look for subsets meeting both closest-point conditions without being Coxeter
    matroids. Exhaustive when ``samples`` is None, otherwise seeded random subsets.
    """
    universe = list(all_permutations(n))
    if samples is None:
        candidates: Iterable[Tuple[Permutation, ...]] = (
            combo
            for size in range(2, max_size + 1)
            for combo in itertools.combinations(universe, size)
        )
    else:
        rng = random.Random(seed)
        candidates = [
            tuple(rng.sample(universe, rng.randint(2, max_size))) for _ in range(samples)
        ]
    checked = satisfying = 0
    witnesses = []
    for combo in tqdm(candidates, disable=not progress, desc="closest-point"):
        checked += 1
        subset = CoxeterSubset(n, frozenset(combo))
        if not closest_point_conditions(subset):
            continue
        satisfying += 1
        if not is_coxeter_matroid(subset).is_matroid:
            witnesses.append(subset.to_dict()["elements"])
    logger.info(f"Closest-point search on S_{n}: {checked} subsets, {len(witnesses)} witnesses")
    return {
        "n": n,
        "checked": checked,
        "satisfying_conditions": satisfying,
        "witnesses": witnesses,
    }
