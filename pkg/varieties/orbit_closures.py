"""
Closures of torus orbits through explicit rational flags.

A flag is an invertible n x n matrix read column by column; the d-th subspace
is spanned by the first d columns. Left multiplication by a permutation
matrix u sends row i to row u(i).
"""

import csv
import io
import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import sympy
from tqdm import tqdm

from combinatorics.permutation import Permutation, all_permutations, check_rank
from geometry.fan import Fan, normal_fan
from geometry.polytope import LatticePolytope
from shared.errors import ParseError, SingularMatrixError
from shared.utils import setup_logger
from varieties.matroids import (
    CoxeterSubset,
    algebraic_retraction,
    is_coxeter_matroid,
    limit_retraction,
    matroid_retraction,
    moment_retraction,
)
from varieties.moment import moment_polytope_of

logger = setup_logger(__name__)

Row = Tuple[Fraction, ...]


def _to_sympy(rows: Sequence[Sequence[Fraction]]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows])


@dataclass(frozen=True)
class FlagMatrix:
    rows: Tuple[Row, ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise ParseError("A flag matrix must be square and nonempty")
        if _to_sympy(rows).det() == 0:
            raise SingularMatrixError("The flag matrix is singular")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "FlagMatrix":
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def of_permutation(cls, w: Permutation) -> "FlagMatrix":
        """Column j carries a single 1 in row w(j)."""
        n = w.n
        return cls(
            tuple(tuple(Fraction(int(w(j + 1) == i + 1)) for j in range(n)) for i in range(n))
        )

    @classmethod
    def parse_csv(cls, text: str) -> "FlagMatrix":
        """Row-major CSV of rationals written as integers or ``p/q``."""
        rows = []
        for record in csv.reader(io.StringIO(text)):
            cells = [c.strip() for c in record if c.strip()]
            if not cells:
                continue
            try:
                rows.append(tuple(Fraction(c) for c in cells))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"Cannot read rational entries from {record!r}")
        return cls(tuple(rows))

    def to_csv(self) -> str:
        return "\n".join(",".join(str(x) for x in row) for row in self.rows) + "\n"

    def to_sympy(self) -> sympy.Matrix:
        return _to_sympy(self.rows)

    def permute_rows(self, u: Permutation) -> "FlagMatrix":
        """u^-1 . x: row i becomes row u(i) of x."""
        check_rank(u, Permutation(tuple(range(1, self.n + 1))))
        return FlagMatrix(tuple(self.rows[u(i) - 1] for i in range(1, self.n + 1)))

    def minor(self, rows: Iterable[int]) -> Fraction:
        """Minor on the given (1-based) rows and the first len(rows) columns."""
        chosen = sorted(rows)
        block = [self.rows[i - 1][: len(chosen)] for i in chosen]
        value = _to_sympy(block).det()
        return Fraction(int(value.p), int(value.q))

    @cached_property
    def top_pivots(self) -> Tuple[FrozenSet[int], ...]:
        """Pivot columns (1-based) of the row-reduced top i rows, for i = 1..n."""
        matrix = self.to_sympy()
        result = []
        for i in range(1, self.n + 1):
            _, pivots = matrix[:i, :].rref()
            result.append(frozenset(p + 1 for p in pivots))
        return tuple(result)


@dataclass(frozen=True)
class PluckerSupport:
    n: int
    sets: Dict[int, FrozenSet[FrozenSet[int]]] = field(hash=False)

    def __getitem__(self, d: int) -> FrozenSet[FrozenSet[int]]:
        return self.sets[d]

    def is_generic(self) -> bool:
        return all(len(self.sets[d]) == math.comb(self.n, d) for d in range(1, self.n + 1))

    def to_dict(self) -> dict:
        return {
            str(d): sorted("".join(str(i) for i in sorted(s)) for s in self.sets[d])
            for d in range(1, self.n + 1)
        }


def plucker_support(x: FlagMatrix) -> PluckerSupport:
    """I_d(x): row sets whose minor on the first d columns is nonzero."""
    sets = {}
    for d in range(1, x.n + 1):
        sets[d] = frozenset(
            frozenset(rows)
            for rows in itertools.combinations(range(1, x.n + 1), d)
            if x.minor(rows) != 0
        )
    return PluckerSupport(x.n, sets)


def fixed_points(x: FlagMatrix) -> CoxeterSubset:
    """Permutations whose prefix sets all lie in the Pluecker support."""
    support = plucker_support(x)
    found: List[Permutation] = []

    def extend(prefix: List[int]):
        if len(prefix) == x.n:
            found.append(Permutation(tuple(prefix)))
            return
        for value in range(1, x.n + 1):
            if value in prefix:
                continue
            if frozenset(prefix + [value]) in support[len(prefix) + 1]:
                extend(prefix + [value])

    extend([])
    return CoxeterSubset(x.n, frozenset(found))


def moment_polytope(x: FlagMatrix) -> LatticePolytope:
    return moment_polytope_of(fixed_points(x).elements)


def opposite_cell_of(y: FlagMatrix) -> Permutation:
    """
    The z with y in B^- z B / B. Ranks of the top-left blocks (rows 1..i,
    columns 1..j) are constant on the cell; z(j) is the first i at which
    column j becomes a pivot.
    """
    pivots = y.top_pivots
    images = []
    for j in range(1, y.n + 1):
        images.append(next(i for i in range(1, y.n + 1) if j in pivots[i - 1]))
    return Permutation(tuple(images))


def geometric_retraction(x: FlagMatrix, u: Permutation) -> Permutation:
    """u . z where u^-1 x lies in the opposite cell of z."""
    return u * opposite_cell_of(x.permute_rows(u))


def random_flag(n: int, rng: random.Random, zero_probability: float = 0.0) -> FlagMatrix:
    """Entries p/q with p in -9..9 and q in 1..9; singular draws are rejected."""
    while True:
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                if zero_probability and rng.random() < zero_probability:
                    row.append(Fraction(0))
                else:
                    row.append(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
            rows.append(tuple(row))
        try:
            return FlagMatrix(tuple(rows))
        except SingularMatrixError:
            logger.debug("Rejected a singular sample")


# ----------------------------------------------------------------- the fan


def _retract_chunk(
    rows: Tuple[Row, ...], chunk: Sequence[Tuple[int, ...]]
) -> List[Tuple[int, ...]]:
    x = FlagMatrix(rows)
    return [geometric_retraction(x, Permutation(u)).images for u in chunk]


def retraction_map(
    x: FlagMatrix, jobs: int = 1, progress: bool = False
) -> Dict[Permutation, Permutation]:
    universe = [u.images for u in all_permutations(x.n)]
    if jobs > 1:
        size = max(1, len(universe) // (4 * jobs))
        chunks = [universe[i : i + size] for i in range(0, len(universe), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(
                tqdm(
                    pool.map(_retract_chunk, itertools.repeat(x.rows), chunks),
                    total=len(chunks),
                    disable=not progress,
                    desc="retraction",
                )
            )
        images = [r for part in parts for r in part]
    else:
        images = _retract_chunk(x.rows, tqdm(universe, disable=not progress, desc="retraction"))
    return {Permutation(u): Permutation(r) for u, r in zip(universe, images)}


@dataclass
class CoarsenedWeylFan:
    """Weyl chambers C(u) grouped by the fixed point their orbit limit reaches."""

    n: int
    retraction: Dict[Permutation, Permutation]

    @cached_property
    def fibers(self) -> Dict[Permutation, Tuple[Permutation, ...]]:
        grouped: Dict[Permutation, List[Permutation]] = {}
        for u, y in self.retraction.items():
            grouped.setdefault(y, []).append(u)
        return {y: tuple(sorted(grouped[y])) for y in sorted(grouped)}

    @property
    def labels(self) -> List[Permutation]:
        return list(self.fibers)

    def chamber_graph_connected(self, y: Permutation) -> bool:
        """Chambers C(u) and C(u s_i) share a wall."""
        members = set(self.fibers[y])
        start = next(iter(members))
        seen = {start}
        stack = [start]
        while stack:
            current = stack.pop()
            for i in range(1, self.n):
                nxt = current.swap_positions(i, i + 1)
                if nxt in members and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen == members

    def fiber_is_convex(self, y: Permutation) -> bool:
        """The chamber union equals the normal cone of the moment polytope at mu(y)."""
        subset = CoxeterSubset(self.n, frozenset(self.fibers))
        expected = {u for u in self.retraction if moment_retraction(subset, u) == y}
        return expected == set(self.fibers[y])

    def moment_polytope(self) -> LatticePolytope:
        return moment_polytope_of(self.fibers)

    def to_fan(self) -> Fan:
        return normal_fan(self.moment_polytope())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "fibers": {y.format(): [u.format() for u in us] for y, us in self.fibers.items()},
        }


def orbit_fan(x: FlagMatrix, jobs: int = 1, progress: bool = False) -> CoarsenedWeylFan:
    return CoarsenedWeylFan(x.n, retraction_map(x, jobs, progress))


def torus_coxeter_check(x: FlagMatrix, jobs: int = 1, progress: bool = False) -> dict:
    """
    Compare the geometric retraction with the matroid, algebraic and limit
    retractions of the fixed-point set at every u.
    """
    subset = fixed_points(x)
    support = plucker_support(x)
    matroid = is_coxeter_matroid(subset)
    geometric = retraction_map(x, jobs, progress)
    disagreements = []
    for u, g in geometric.items():
        others = {
            "algebraic": algebraic_retraction(subset, u),
            "limit": limit_retraction(support, u),
        }
        if matroid.is_matroid:
            others["matroid"] = matroid_retraction(subset, u)
        for kind, r in others.items():
            if r != g:
                disagreements.append({"u": u.format(), "geometric": g.format(), kind: r.format()})
    if disagreements:
        logger.warning(f"{len(disagreements)} retraction disagreements")
    return {
        "fixed_points": subset.to_dict()["elements"],
        "is_matroid": matroid.is_matroid,
        "agree": matroid.is_matroid and not disagreements,
        "disagreements": disagreements,
    }
