"""
Generic torus orbit closures Y_w in Schubert varieties X_w.

Covers the polytopes Q_w, the smoothness digraphs, generalized Eulerian
polynomials, complexity, the toric and complexity-one classifications and
the fans of toric Schubert varieties attached to distinct-letter words.
"""

import itertools
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
from tqdm import tqdm

from combinatorics.bruhat import (
    BruhatInterval,
    ReducedWord,
    boolean_hasse,
    bruhat_leq,
    distinct_letter_word,
    iter_reduced_words,
    product_hasse,
    support,
)
from combinatorics.patterns import avoids_45bar312, contains_pattern
from combinatorics.permutation import (
    Permutation,
    all_permutations,
    from_word,
    identity,
    longest,
)
from geometry.fan import Fan, fan_isomorphic
from geometry.polynomial import IntPolynomial
from geometry.polytope import LatticePolytope, combinatorially_equivalent, cube, product
from shared.errors import IntervalError, RepeatedLettersError
from shared.utils import setup_logger
from varieties.moment import moment_image

logger = setup_logger(__name__)

FANO = "Fano"
WEAK_FANO = "weak-Fano-not-Fano"
SMOOTH_C1 = "smooth-c1"
SINGULAR_C1 = "singular-c1"
NEITHER = "neither"

PATTERN_3412 = Permutation((3, 4, 1, 2))


# ---------------------------------------------------------------- polytopes


@lru_cache(maxsize=512)
def Q_w(w: Permutation) -> LatticePolytope:
    """Conv{mu(u) : u <= w}, labelled by u."""
    members = BruhatInterval(identity(w.n), w).elements
    return LatticePolytope([moment_image(u) for u in members], members, check=False)


# ------------------------------------------------------------------- graphs


def _require_below(w: Permutation, u: Permutation):
    if not bruhat_leq(u, w):
        raise IntervalError(f"{u.format()} is not below {w.format()}")


def gamma_tilde(w: Permutation, u: Permutation) -> nx.DiGraph:
    """Edges (u(i), u(j)), i < j, whenever t u <= w and l(t u) = l(u) +- 1."""
    _require_below(w, u)
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, u.n + 1))
    for i in range(1, u.n + 1):
        for j in range(i + 1, u.n + 1):
            moved = u.swap_positions(i, j)
            if abs(moved.length - u.length) == 1 and bruhat_leq(moved, w):
                graph.add_edge(u(i), u(j))
    return graph


def gamma(w: Permutation, u: Permutation) -> nx.DiGraph:
    return nx.transitive_reduction(gamma_tilde(w, u))


def edge_list(graph: nx.DiGraph) -> List[Tuple[int, int]]:
    return sorted(graph.edges())


def is_smooth_at(w: Permutation, u: Permutation) -> bool:
    return nx.is_forest(gamma(w, u).to_undirected())


def is_Yw_smooth(w: Permutation) -> bool:
    return all(is_smooth_at(w, u) for u in BruhatInterval(identity(w.n), w).elements)


def edges_at(w: Permutation, u: Permutation) -> List[Permutation]:
    """Neighbours of u on Q_w predicted by the reduced digraph: u t(i, j) per edge."""
    position = {u(i): i for i in range(1, u.n + 1)}
    return sorted(u.swap_positions(position[a], position[b]) for a, b in gamma(w, u).edges())


def locally_factorial_pattern_test(w: Permutation) -> bool:
    """Avoids 4231 and 45-3-12."""
    return contains_pattern(w, (4, 2, 3, 1)) == 0 and avoids_45bar312(w)


def locally_factorial_report(w: Permutation) -> dict:
    by_pattern = locally_factorial_pattern_test(w)
    by_graph = is_smooth_at(w, w)
    return {
        "w": w.format(),
        "patterns": by_pattern,
        "gamma_forest": by_graph,
        "agree": by_pattern == by_graph,
    }


# -------------------------------------------------------------- polynomials


def ascent_count(w: Permutation, u: Permutation) -> int:
    """|E_w(u)^+|: reduced edges (a, b) with a < b."""
    return sum(1 for a, b in gamma(w, u).edges() if a < b)


def A_w(w: Permutation) -> IntPolynomial:
    counts: Dict[int, int] = {}
    for u in BruhatInterval(identity(w.n), w).elements:
        k = ascent_count(w, u)
        counts[k] = counts.get(k, 0) + 1
    return IntPolynomial.from_counts(counts)


def poincare_Yw(w: Permutation) -> IntPolynomial:
    return A_w(w).substitute_square()


def eulerian(n: int) -> IntPolynomial:
    counts: Dict[int, int] = {}
    for u in all_permutations(n):
        k = u.ascents()
        counts[k] = counts.get(k, 0) + 1
    return IntPolynomial.from_counts(counts)


def eulerian_by_recurrence(n: int) -> IntPolynomial:
    """A_{k+1} = (k t + 1) A_k - t (t - 1) A_k'."""
    current = IntPolynomial((1,))
    for k in range(1, n):
        current = IntPolynomial((1, k)) * current - IntPolynomial((0, -1, 1)) * current.derivative()
    return current


def complexity(w: Permutation) -> int:
    return w.length - Q_w(w).dim


# ----------------------------------------------------------- classification


def toric_schubert_report(w: Permutation) -> dict:
    conditions = {
        "complexity_zero": complexity(w) == 0,
        "avoids_321_3412": contains_pattern(w, (3, 2, 1)) == 0
        and contains_pattern(w, PATTERN_3412) == 0,
        "distinct_letter_word": distinct_letter_word(w) is not None,
        "boolean_interval": BruhatInterval(identity(w.n), w).is_boolean(),
        "cube": Q_w(w).is_cube(),
    }
    values = set(conditions.values())
    return {
        "w": w.format(),
        "conditions": conditions,
        "toric": values == {True},
        "consistent": len(values) == 1,
    }


def _word_with_factor(
    w: Permutation, factors: Sequence[Tuple[int, ...]]
) -> Optional[ReducedWord]:
    """A reduced word with one of the factors as a consecutive block and no other repeats."""
    if len(support(w)) != w.length - 1:
        return None
    for word in iter_reduced_words(w):
        letters = word.letters
        for start in range(len(letters)):
            for factor in factors:
                if letters[start : start + len(factor)] != factor:
                    continue
                rest = letters[:start] + letters[start + len(factor) :]
                if len(set(rest) | set(factor)) == len(rest) + len(set(factor)):
                    return word
    return None


def smooth_factor_word(w: Permutation) -> Optional[ReducedWord]:
    return _word_with_factor(w, [(i, i + 1, i) for i in range(1, w.n - 1)])


def singular_factor_word(w: Permutation) -> Optional[ReducedWord]:
    return _word_with_factor(w, [(i + 1, i, i + 2, i + 1) for i in range(1, w.n - 2)])


def _hexagon() -> LatticePolytope:
    return Q_w(longest(3))


def _interval_product_check(w: Permutation, core: Permutation, rank: int) -> bool:
    if rank < 0:
        return False
    core_hasse = BruhatInterval(identity(core.n), core).hasse_digraph()
    target = product_hasse(core_hasse, boolean_hasse(rank))
    return BruhatInterval(identity(w.n), w).is_isomorphic_to(target)


def _polytope_product_check(w: Permutation, core: LatticePolytope, rank: int) -> bool:
    if rank < 0:
        return False
    model = product(core, cube(rank)) if rank else core
    return combinatorially_equivalent(Q_w(w), model)


def complexity_one_report(w: Permutation) -> dict:
    c = complexity(w)
    smooth = is_Yw_smooth(w)
    count_321 = contains_pattern(w, (3, 2, 1))
    count_3412 = contains_pattern(w, PATTERN_3412)
    smooth_conditions = {
        "complexity_one_smooth": c == 1 and smooth,
        "patterns": count_321 == 1 and count_3412 == 0,
        "word_factor": smooth_factor_word(w) is not None,
        "interval": _interval_product_check(w, longest(3), w.length - 3),
        "polytope": _polytope_product_check(w, _hexagon(), w.length - 3),
    }
    singular_conditions = {
        "complexity_one_singular": c == 1 and not smooth,
        "patterns": count_3412 == 1 and count_321 == 0,
        "word_factor": singular_factor_word(w) is not None,
        "interval": _interval_product_check(w, PATTERN_3412, w.length - 4),
        "polytope": _polytope_product_check(w, Q_w(PATTERN_3412), w.length - 4),
    }
    if all(smooth_conditions.values()):
        kind = SMOOTH_C1
    elif all(singular_conditions.values()):
        kind = SINGULAR_C1
    else:
        kind = NEITHER
    consistent = all(
        len(set(conditions.values())) == 1
        for conditions in (smooth_conditions, singular_conditions)
    )
    return {
        "w": w.format(),
        "complexity": c,
        "class": kind,
        "smooth_conditions": smooth_conditions,
        "singular_conditions": singular_conditions,
        "consistent": consistent,
    }


# -------------------------------------------------- toric Schubert fans


def _require_distinct(word: ReducedWord):
    if not word.has_distinct_letters():
        raise RepeatedLettersError(f"{word} repeats a letter")


def reduced_char_matrix(word: ReducedWord) -> List[List[int]]:
    """-1 on the diagonal; below it a_{jk} = 1 when letters j and k are adjacent."""
    _require_distinct(word)
    letters = word.letters
    m = len(letters)
    matrix = [[0] * m for _ in range(m)]
    for j in range(m):
        matrix[j][j] = -1
        for k in range(j):
            if abs(letters[j] - letters[k]) == 1:
                matrix[j][k] = 1
    return matrix


def schubert_fan(word: ReducedWord) -> Fan:
    """Rays e_1..e_m and the columns of the reduced characteristic matrix; 2^m mixed cones."""
    matrix = reduced_char_matrix(word)
    m = len(matrix)
    rays = [tuple(int(i == k) for i in range(m)) for k in range(m)]
    rays += [tuple(matrix[j][k] for j in range(m)) for k in range(m)]
    cones = [
        frozenset(k if choice else m + k for k, choice in enumerate(choices))
        for choices in itertools.product((True, False), repeat=m)
    ]
    return Fan(m, tuple(rays), tuple(cones))


def g_digraph(word: ReducedWord) -> nx.DiGraph:
    _require_distinct(word)
    letters = word.letters
    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, len(letters) + 1))
    for k, j in itertools.combinations(range(1, len(letters) + 1), 2):
        if abs(letters[k - 1] - letters[j - 1]) == 1:
            graph.add_edge(k, j)
    return graph


def fano_class(word: ReducedWord) -> str:
    graph = g_digraph(word)
    return FANO if all(d <= 1 for _, d in graph.out_degree()) else WEAK_FANO


def fano_class_from_fan(word: ReducedWord) -> str:
    fan = schubert_fan(word)
    if fan.is_fano():
        return FANO
    return WEAK_FANO if fan.is_weak_fano() else "not-weak-Fano"


def coxeter_elements(n: int) -> List[Permutation]:
    """Products of all simple reflections, each once, in every order."""
    return sorted({from_word(order, n) for order in itertools.permutations(range(1, n))})


def coxeter_element_classes(n: int) -> List[Tuple[Permutation, ...]]:
    """Classes {w, w0 w w0}."""
    classes = {tuple(sorted({w, w.conjugate_by_longest()})) for w in coxeter_elements(n)}
    return sorted(classes)


def coxeter_class_check(n: int) -> dict:
    """Compare the {w, w0 w w0} partition with fan isomorphism and G_i isomorphism."""
    elements = coxeter_elements(n)
    words = {w: distinct_letter_word(w) for w in elements}
    fans = {w: schubert_fan(words[w]) for w in elements}
    graphs = {w: g_digraph(words[w]) for w in elements}
    expected = {w: c for c in coxeter_element_classes(n) for w in c}
    mismatches = []
    for v, w in itertools.combinations(elements, 2):
        same_class = expected[v] == expected[w]
        by_fan = fan_isomorphic(fans[v], fans[w])
        by_graph = nx.is_isomorphic(graphs[v], graphs[w])
        if not same_class == by_fan == by_graph:
            mismatches.append(
                {
                    "pair": [v.format(), w.format()],
                    "class": same_class,
                    "fan": by_fan,
                    "digraph": by_graph,
                }
            )
    return {
        "n": n,
        "classes": [[w.format() for w in c] for c in coxeter_element_classes(n)],
        "mismatches": mismatches,
        "agree": not mismatches,
    }


# -------------------------------------------------------------- harnesses


def smoothness_conjecture_search(n: int, progress: bool = False) -> dict:
    """w with Gamma_w(w) a forest but Gamma_w(u) not a forest for some u <= w."""
    witnesses = []
    checked = 0
    for w in tqdm(list(all_permutations(n)), disable=not progress, desc="smoothness"):
        checked += 1
        if not is_smooth_at(w, w):
            continue
        bad = [u for u in BruhatInterval(identity(n), w).elements if not is_smooth_at(w, u)]
        if bad:
            witnesses.append({"w": w.format(), "singular_at": [u.format() for u in bad]})
    logger.info(f"Smoothness search on S_{n}: {len(witnesses)} witnesses")
    return {"n": n, "checked": checked, "witnesses": witnesses}


def palindromic_poincare_search(n: int, progress: bool = False) -> dict:
    """w with a palindromic Poincare polynomial but singular Y_w."""
    witnesses = []
    palindromic = 0
    for w in tqdm(list(all_permutations(n)), disable=not progress, desc="palindromic"):
        if not A_w(w).is_palindromic():
            continue
        palindromic += 1
        if not is_Yw_smooth(w):
            witnesses.append(w.format())
    logger.info(f"Palindromic search on S_{n}: {len(witnesses)} of {palindromic} are singular")
    return {"n": n, "palindromic": palindromic, "witnesses": witnesses}
