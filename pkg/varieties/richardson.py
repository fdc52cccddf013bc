"""
Bruhat interval polytopes Q^v_w and the generic torus orbit closures in
Richardson varieties they describe.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from combinatorics.bruhat import BruhatInterval, bruhat_leq
from combinatorics.permutation import Permutation, all_permutations, from_word, longest
from geometry.polytope import LatticePolytope, combinatorially_equivalent, cube, product
from shared.errors import LengthConditionError, RepeatedLettersError
from shared.utils import setup_logger
from varieties.moment import moment_image
from varieties.schubert import Q_w

logger = setup_logger(__name__)

Run = Tuple[int, int]


@lru_cache(maxsize=2048)
def Q_vw(v: Permutation, w: Permutation) -> LatticePolytope:
    """Conv{mu(u) : v <= u <= w}, labelled by u."""
    members = BruhatInterval(v, w).elements
    return LatticePolytope([moment_image(u) for u in members], members, check=False)


def length_difference(v: Permutation, w: Permutation) -> int:
    return w.length - v.length


def is_toric(v: Permutation, w: Permutation) -> bool:
    return Q_vw(v, w).dim == length_difference(v, w)


def richardson_complexity(v: Permutation, w: Permutation) -> int:
    """c(v, w) = l(w) - l(v) - dim Q^v_w."""
    return length_difference(v, w) - Q_vw(v, w).dim


def bruhat_pairs(n: int) -> Iterator[Tuple[Permutation, Permutation]]:
    perms = list(all_permutations(n))
    for v in perms:
        for w in perms:
            if bruhat_leq(v, w):
                yield v, w


# --------------------------------------------------------------- theorems


def faces_are_subintervals_check(v: Permutation, w: Permutation) -> dict:
    """
    Whether every subinterval [x, y] of [v, w] spans a face of Q^v_w. The first
    failing subinterval is returned as witness.
    """
    polytope = Q_vw(v, w)
    result = {"v": v.format(), "w": w.format(), "toric": is_toric(v, w)}
    if v == w:
        return {**result, "holds": True, "witness": None}
    faces = set(polytope.face_lattice().faces)
    index = {label: i for i, label in enumerate(polytope.labels)}
    members = BruhatInterval(v, w).elements
    for x, y in itertools.combinations_with_replacement(members, 2):
        if not bruhat_leq(x, y):
            continue
        vertices = frozenset(index[u] for u in BruhatInterval(x, y).elements)
        if vertices not in faces:
            witness = {"x": x.format(), "y": y.format()}
            logger.debug(f"[{x}, {y}] is not a face of Q^{v}_{w}")
            return {**result, "holds": False, "witness": witness}
    return {**result, "holds": True, "witness": None}


def cube_theorem_check(v: Permutation, w: Permutation) -> dict:
    """Q^v_w is a cube iff it is toric and [v, w] is Boolean."""
    cube_flag = Q_vw(v, w).is_cube()
    toric = is_toric(v, w)
    boolean = BruhatInterval(v, w).is_boolean()
    return {
        "v": v.format(),
        "w": w.format(),
        "dim": Q_vw(v, w).dim,
        "ell_diff": length_difference(v, w),
        "toric": toric,
        "cube": cube_flag,
        "boolean": boolean,
        "consistent": cube_flag == (toric and boolean),
    }


def pair_report(v: Permutation, w: Permutation) -> dict:
    report = cube_theorem_check(v, w)
    report.pop("consistent")
    return report


def dimension_symmetry(v: Permutation, w: Permutation) -> bool:
    return Q_vw(v, w).dim == Q_vw(v.inverse, w.inverse).dim


def inverse_pair_report(v: Permutation, w: Permutation) -> dict:
    """Compare Q^v_w with Q^{v^-1}_{w^-1}: dimension, edges and face lattice."""
    first, second = Q_vw(v, w), Q_vw(v.inverse, w.inverse)
    report = {
        "v": v.format(),
        "w": w.format(),
        "dims": [first.dim, second.dim],
        "edges": [len(first.edges()), len(second.edges())] if first.dim else [0, 0],
    }
    if first.dim:
        report["combinatorially_equivalent"] = combinatorially_equivalent(first, second)
    return report


# ------------------------------------------------------ minimal expressions


@dataclass(frozen=True)
class MinimalExpression:
    """Runs s(p, q) = s_p s_{p+-1} ... s_q over pairwise disjoint letter intervals."""

    factors: Tuple[Run, ...]
    minimal: bool = True

    @property
    def intervals(self) -> List[Tuple[int, int]]:
        return [(min(p, q), max(p, q)) for p, q in self.factors]

    @property
    def proper(self) -> bool:
        """No two intervals touch."""
        spans = sorted(self.intervals)
        return all(b + 1 < c for (_, b), (c, _) in zip(spans, spans[1:]))

    def letters(self) -> Tuple[int, ...]:
        word: List[int] = []
        for p, q in self.factors:
            step = 1 if q >= p else -1
            word.extend(range(p, q + step, step))
        return tuple(word)

    def format(self) -> str:
        return "".join(f"s({p},{q})" for p, q in self.factors)

    def to_dict(self) -> dict:
        return {
            "factors": [list(f) for f in self.factors],
            "expression": self.format(),
            "minimal": self.minimal,
            "proper": self.proper,
        }


def minimal_expression(letters: Sequence[int]) -> MinimalExpression:
    """
    Split the letters into runs of consecutive integers read in a single
    direction. Between adjacent letters k and k+1 the word fixes which comes
    first; a run keeps growing while that orientation agrees with its own.
    """
    letters = tuple(letters)
    if len(set(letters)) != len(letters):
        raise RepeatedLettersError(f"{letters} repeats a letter")
    position = {letter: i for i, letter in enumerate(letters)}
    runs: List[List[int]] = []
    directions: List[int] = []
    for letter in sorted(letters):
        if runs and runs[-1][-1] == letter - 1:
            orientation = 1 if position[letter - 1] < position[letter] else -1
            if len(runs[-1]) == 1 or directions[-1] == orientation:
                runs[-1].append(letter)
                directions[-1] = orientation
                continue
        runs.append([letter])
        directions.append(0)

    order = nx.DiGraph()
    order.add_nodes_from(range(len(runs)))
    owner = {letter: r for r, run in enumerate(runs) for letter in run}
    for letter in letters:
        if letter + 1 in owner and owner[letter + 1] != owner[letter]:
            first, second = owner[letter], owner[letter + 1]
            if position[letter] > position[letter + 1]:
                first, second = second, first
            order.add_edge(first, second)
    sequence = nx.lexicographical_topological_sort(order, key=lambda r: runs[r][0])

    factors = []
    for r in sequence:
        low, high = runs[r][0], runs[r][-1]
        factors.append((high, low) if directions[r] == -1 else (low, high))
    return MinimalExpression(tuple(factors))


def is_proper(expression: MinimalExpression) -> bool:
    return expression.proper


def proper_pair_check(v: Permutation, letters: Sequence[int], side: str = "left") -> dict:
    """w = s_{j1} ... s_{jm} v (or v s_{j1} ... s_{jm}); requires l(w) = l(v) + m."""
    letters = tuple(letters)
    expression = minimal_expression(letters)
    word = from_word(letters, v.n)
    w = word * v if side == "left" else v * word
    if w.length != v.length + len(letters):
        raise LengthConditionError(
            f"l({w.format()}) = {w.length} differs from l(v) + {len(letters)} = "
            f"{v.length + len(letters)}"
        )
    toric = is_toric(v, w)
    cube_flag = Q_vw(v, w).is_cube()
    return {
        "v": v.format(),
        "w": w.format(),
        "expression": expression.format(),
        "proper": expression.proper,
        "toric": toric,
        "cube": cube_flag,
        "consistent": toric and (cube_flag or not expression.proper),
    }


# -------------------------------------------------------------- harnesses


def _hexagon_times_cube(rank: int) -> Optional[LatticePolytope]:
    if rank < 0:
        return None
    hexagon = Q_w(longest(3))
    return product(hexagon, cube(rank)) if rank else hexagon


def simple_endpoints_search(n: int, progress: bool = False) -> dict:
    """Q^v_w simple at mu(v) and mu(w) but not simple."""
    witnesses = []
    checked = 0
    for v, w in tqdm(list(bruhat_pairs(n)), disable=not progress, desc="endpoints"):
        polytope = Q_vw(v, w)
        if polytope.dim < 2:
            continue
        checked += 1
        if polytope.is_simple_at(v) and polytope.is_simple_at(w) and not polytope.is_simple():
            witnesses.append([v.format(), w.format()])
    logger.info(f"Simple-endpoint search on S_{n}: {len(witnesses)} witnesses")
    return {"n": n, "checked": checked, "witnesses": witnesses}


def inverse_simplicity_search(n: int, progress: bool = False) -> dict:
    """Q^v_w simple while Q^{v^-1}_{w^-1} is not."""
    witnesses = []
    checked = 0
    for v, w in tqdm(list(bruhat_pairs(n)), disable=not progress, desc="inverse"):
        if Q_vw(v, w).dim < 2:
            continue
        checked += 1
        if Q_vw(v, w).is_simple() and not Q_vw(v.inverse, w.inverse).is_simple():
            witnesses.append([v.format(), w.format()])
    logger.info(f"Inverse-simplicity search on S_{n}: {len(witnesses)} witnesses")
    return {"n": n, "checked": checked, "witnesses": witnesses}


def complexity_one_richardson_search(n: int, progress: bool = False) -> dict:
    """Compare 'simple with c(v, w) = 1' against 'hexagon times a cube'."""
    witnesses = []
    counts: Dict[str, int] = {"simple_c1": 0, "hexagon_cube": 0}
    for v, w in tqdm(list(bruhat_pairs(n)), disable=not progress, desc="complexity-one"):
        polytope = Q_vw(v, w)
        if polytope.dim < 2:
            continue
        simple_c1 = richardson_complexity(v, w) == 1 and polytope.is_simple()
        model = _hexagon_times_cube(length_difference(v, w) - 3)
        shaped = model is not None and combinatorially_equivalent(polytope, model)
        counts["simple_c1"] += simple_c1
        counts["hexagon_cube"] += shaped
        if simple_c1 != shaped:
            witnesses.append({"v": v.format(), "w": w.format(), "simple_c1": simple_c1})
    logger.info(f"Richardson complexity-one search on S_{n}: {len(witnesses)} witnesses")
    return {"n": n, **counts, "witnesses": witnesses}


def edge_count_golden() -> dict:
    """Q^e_{35412} and Q^e_{45132}: inverse endpoints, equal dimension, different edge counts."""
    v = Permutation((1, 2, 3, 4, 5))
    first, second = Permutation((3, 5, 4, 1, 2)), Permutation((4, 5, 1, 3, 2))
    return {
        "pairs": [[v.format(), first.format()], [v.format(), second.format()]],
        "dims": [Q_vw(v, first).dim, Q_vw(v, second).dim],
        "edges": [len(Q_vw(v, first).edges()), len(Q_vw(v, second).edges())],
    }
