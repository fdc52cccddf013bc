"""
Fans of Catalan type attached to polygon triangulations, and the head/tail
Richardson pairs whose interval polytopes have those fans as normal fans.

Vectors live in N = Z^{n+1} / Z(1, ..., 1) written in the basis varpi_1..varpi_n
(partial sums e_1 + ... + e_i), with varpi_0 = varpi_{n+1} = 0. Dual vectors live in
M = {x in Z^{n+1} : sum x = 0}.
"""

import itertools
import random
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from tqdm import tqdm

from combinatorics.bruhat import BruhatInterval
from combinatorics.forests import SignedForest
from combinatorics.permutation import Permutation, all_permutations, from_word
from combinatorics.trees import (
    BinaryTree,
    Triangulation,
    left_right_trees,
    psi,
    tree_of_triangulation,
    triangulation_of_tree,
    triangulations,
    unordered_canonical,
    wedderburn_etherington,
)
from geometry.fan import Fan, fan_isomorphic, normal_fan
from shared.errors import LengthConditionError
from shared.utils import setup_logger
from varieties.richardson import Q_vw

logger = setup_logger(__name__)

Vector = Tuple[int, ...]


def _varpi(k: int, n: int) -> List[int]:
    return [int(i == k) for i in range(1, n + 1)]


def _difference(a: int, b: int, n: int) -> Vector:
    return tuple(x - y for x, y in zip(_varpi(a, n), _varpi(b, n)))


def catalan_rays(triangulation: Triangulation) -> Tuple[List[Vector], List[Vector]]:
    """v_k = varpi_k - varpi_{k_R} and w_k = varpi_{k_L} - varpi_k for k = 1..n."""
    trees = left_right_trees(triangulation)
    n = triangulation.n
    v = [_difference(k, trees.right[k], n) for k in range(1, n + 1)]
    w = [_difference(trees.left[k], k, n) for k in range(1, n + 1)]
    return v, w


def catalan_fan(triangulation: Triangulation) -> Fan:
    """Rays v_1..v_n, w_1..w_n; one maximal cone per choice of v_k or w_k for every k."""
    v, w = catalan_rays(triangulation)
    n = triangulation.n
    cones = [
        frozenset(k if choice else n + k for k, choice in enumerate(choices))
        for choices in itertools.product((True, False), repeat=n)
    ]
    return Fan(n, tuple(v + w), tuple(cones))


def pairing(x: Sequence[int], m: Sequence[int]) -> int:
    """<sum x_i varpi_i, m> = sum_i x_i (m_1 + ... + m_i)."""
    total, prefix = 0, 0
    for x_i, m_i in zip(x, m):
        prefix += m_i
        total += x_i * prefix
    return total


def dual_bases(triangulation: Triangulation) -> Tuple[List[Vector], List[Vector]]:
    """p_k = e_{k_L + 1} - e_{k + 1} and q_k = e_{k_R} - e_k in M."""
    trees = left_right_trees(triangulation)
    n = triangulation.n

    def e(i: int) -> List[int]:
        return [int(j == i) for j in range(1, n + 2)]

    p = [
        tuple(a - b for a, b in zip(e(trees.left[k] + 1), e(k + 1))) for k in range(1, n + 1)
    ]
    q = [tuple(a - b for a, b in zip(e(trees.right[k]), e(k))) for k in range(1, n + 1)]
    return p, q


def duality_holds(triangulation: Triangulation) -> bool:
    v, w = catalan_rays(triangulation)
    p, q = dual_bases(triangulation)
    n = triangulation.n
    for i, j in itertools.product(range(n), repeat=2):
        expected = int(i == j)
        if pairing(v[i], p[j]) != expected or pairing(w[i], q[j]) != expected:
            return False
    return True


def balanced_index(triangulation: Triangulation) -> int:
    """The unique k with v_k + w_k = 0."""
    v, w = catalan_rays(triangulation)
    found = [k + 1 for k in range(triangulation.n) if not any(a + b for a, b in zip(v[k], w[k]))]
    if len(found) != 1:
        logger.warning(f"Expected one balanced index, found {found}")
    return found[0]


def catalan_forest(triangulation: Triangulation) -> SignedForest:
    """
    The binary tree of the triangulation as a signed forest: right children
    hang by a + edge, left children by a - edge.
    """
    n = triangulation.n
    parents: List[Optional[int]] = [None] * n
    signs: List[Optional[int]] = [None] * n

    def walk(node: Optional[BinaryTree]):
        if node is None:
            return
        for child, sign in ((node.left, -1), (node.right, 1)):
            if child is not None:
                parents[child.label - 1] = node.label
                signs[child.label - 1] = sign
                walk(child)

    walk(tree_of_triangulation(triangulation))
    return SignedForest(n, tuple(parents), tuple(signs))


def tree_classes(n: int) -> Dict[str, List[Triangulation]]:
    """Triangulations grouped by the unordered shape of their binary trees."""
    classes: Dict[str, List[Triangulation]] = {}
    for triangulation in triangulations(n):
        key = unordered_canonical(tree_of_triangulation(triangulation))
        classes.setdefault(key, []).append(triangulation)
    return dict(sorted(classes.items()))


def classification_check(
    n: int, samples: Optional[int] = None, seed: int = 0, progress: bool = False
) -> dict:
    """
    Fans of two triangulations are isomorphic iff their binary trees agree as
    unordered rooted trees. Each class is compared with its first member and
    class representatives are compared pairwise. With ``samples`` only that
    many members per class are drawn.
    """
    classes = tree_classes(n)
    rng = random.Random(seed)
    fans = {key: catalan_fan(members[0]) for key, members in classes.items()}
    witnesses = []
    for key, members in tqdm(classes.items(), disable=not progress, desc="catalan classes"):
        others = members[1:]
        if samples is not None and len(others) > samples:
            others = rng.sample(others, samples)
        for triangulation in others:
            if not fan_isomorphic(fans[key], catalan_fan(triangulation)):
                witnesses.append({"same_tree": True, "triangulation": triangulation.to_dict()})
    for first, second in itertools.combinations(fans, 2):
        if fan_isomorphic(fans[first], fans[second]):
            witnesses.append({"same_tree": False, "trees": [first, second]})
    expected = wedderburn_etherington(n + 1)[-1]
    if witnesses:
        logger.warning(f"Catalan classification on n={n}: {len(witnesses)} witnesses")
    return {
        "n": n,
        "triangulations": sum(len(m) for m in classes.values()),
        "classes": len(classes),
        "expected_classes": expected,
        "holds": not witnesses and len(classes) == expected,
        "witnesses": witnesses,
    }


def fano_check(n: int, progress: bool = False) -> dict:
    failures = []
    for triangulation in tqdm(triangulations(n), disable=not progress, desc="catalan fano"):
        fan = catalan_fan(triangulation)
        if not (fan.is_smooth() and fan.is_complete() and fan.is_fano()):
            failures.append(triangulation.to_dict())
    return {"n": n, "holds": not failures, "failures": failures}


def primitive_pairs_check(triangulation: Triangulation) -> bool:
    """The primitive collections are exactly {v_k, w_k}."""
    n = triangulation.n
    expected = [(k, n + k) for k in range(n)]
    return catalan_fan(triangulation).primitive_collections() == expected


# ------------------------------------------------------ Richardson pairs


def hat_u(u: Permutation) -> Permutation:
    """1 followed by u shifted up by one."""
    return Permutation((1,) + tuple(x + 1 for x in u.images))


def tilde_u(u: Permutation) -> Permutation:
    return Permutation(u.images + (u.n + 1,))


def run_permutation(p: int, q: int, n: int) -> Permutation:
    """s(p, q) in S_n."""
    step = 1 if q >= p else -1
    return from_word(range(p, q + step, step), n)


def catalan_pair(u: Permutation, side: str = "head") -> Tuple[Permutation, Permutation]:
    """(v, w) with v^-1 = u^ and w^-1 = u^ s(1, n), or the tail variant with u~ and s(n, 1)."""
    n = u.n
    if side == "head":
        base, run = hat_u(u), run_permutation(1, n, n + 1)
    else:
        base, run = tilde_u(u), run_permutation(n, 1, n + 1)
    v, w = base.inverse, (base * run).inverse
    if w.length != v.length + n:
        raise LengthConditionError(f"l(w) - l(v) = {w.length - v.length}, expected {n}")
    return v, w


def psi_triangulation(u: Permutation) -> Triangulation:
    return triangulation_of_tree(psi(u))


def atoms_coatoms_vs_trees(u: Permutation) -> dict:
    """
    Atoms of [u^, u^ s(1, n)] are u^ t(i, j) for left-tree edges {i-1, j-1};
    coatoms are (u^ s(1, n)) t(i, j) for right-tree edges {i, j}.
    """
    n = u.n
    bottom = hat_u(u)
    top = bottom * run_permutation(1, n, n + 1)
    interval = BruhatInterval(bottom, top)
    trees = left_right_trees(psi_triangulation(u))
    atoms = {bottom.swap_positions(a + 1, b + 1) for a, b in trees.left_edges}
    coatoms = {top.swap_positions(a, b) for a, b in trees.right_edges}
    return {
        "u": u.format(),
        "left_edges": [list(e) for e in trees.left_edges],
        "right_edges": [list(e) for e in trees.right_edges],
        "atoms_match": atoms == set(interval.atoms),
        "coatoms_match": coatoms == set(interval.coatoms),
    }


def normal_fan_bridge(u: Permutation, side: str = "head") -> bool:
    """
    The normal fan of Q^v_w for the head pair of u is the fan of psi(u); the
    tail pair gives the fan of psi(w0 u w0).
    """
    v, w = catalan_pair(u, side)
    source = u if side == "head" else u.conjugate_by_longest()
    return fan_isomorphic(normal_fan(Q_vw(v, w)), catalan_fan(psi_triangulation(source)))


def normal_fan_bridge_check(
    n: int, samples: Optional[int] = None, seed: int = 0, progress: bool = False
) -> dict:
    perms = list(all_permutations(n))
    if samples is not None and samples < len(perms):
        perms = random.Random(seed).sample(perms, samples)
    failures = []
    for u in tqdm(perms, disable=not progress, desc="normal fans"):
        for side in ("head", "tail"):
            if not normal_fan_bridge(u, side):
                failures.append({"u": u.format(), "side": side})
    return {"n": n, "checked": len(perms), "holds": not failures, "failures": failures}


def pair_data(u: Permutation) -> dict:
    head, tail = catalan_pair(u, "head"), catalan_pair(u, "tail")
    return {
        "u": u.format(),
        "hat_u": hat_u(u).format(),
        "tilde_u": tilde_u(u).format(),
        "head": {"v": head[0].format(), "w": head[1].format()},
        "tail": {"v": tail[0].format(), "w": tail[1].format()},
        "tree": unordered_canonical(psi(u)),
        "triangulation": psi_triangulation(u).to_dict(),
    }


# ----------------------------------------------------------- enumeration


def wedderburn_etherington_series(upto: int) -> dict:
    """
    Check B(x) = x + B(x)^2 / 2 + B(x^2) / 2 on the truncation of
    B = sum b_k x^k to degree ``upto``.
    """
    x = sympy.Symbol("x")
    b = wedderburn_etherington(upto)
    series = sum(c * x ** (k + 1) for k, c in enumerate(b))
    rhs = x + sympy.Rational(1, 2) * series**2 + sympy.Rational(1, 2) * series.subs(x, x**2)
    truncated = sympy.Poly(sympy.expand(rhs - series), x)
    low = [c for (power,), c in truncated.terms() if power <= upto and c != 0]
    return {"b": b, "holds": not low}
