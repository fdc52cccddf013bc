"""
Fano Bott manifolds as signed rooted forests.

The fan of a forest F on [n] has rays v_i = e_i and w_i with
v_i + w_i = 0 at a root, v_j along a + edge to the parent j, and w_j along a
- edge. Every maximal cone picks one of v_i, w_i for each i.
"""

import itertools
from typing import Dict, List, Optional, Tuple

from tqdm import tqdm

from combinatorics.forests import SignedForest, class_count_note, sf_classes, sf_orbits
from geometry.fan import Fan, fan_isomorphic
from shared.errors import NotBottFanError, ParseError
from shared.utils import setup_logger

logger = setup_logger(__name__)

Vector = Tuple[int, ...]


def fano_bott_from_forest(forest: SignedForest) -> Fan:
    n = forest.n
    v: Dict[int, Vector] = {
        i: tuple(int(k == i) for k in range(1, n + 1)) for i in range(1, n + 1)
    }
    w: Dict[int, Vector] = {}
    for i in forest.topological_order():
        parent = forest.parent(i)
        if parent is None:
            shift: Vector = (0,) * n
        else:
            shift = v[parent] if forest.sign(i) > 0 else w[parent]
        w[i] = tuple(s - x for s, x in zip(shift, v[i]))
    rays = [v[i] for i in range(1, n + 1)] + [w[i] for i in range(1, n + 1)]
    cones = [
        frozenset(k if choice else n + k for k, choice in enumerate(choices))
        for choices in itertools.product((True, False), repeat=n)
    ]
    return Fan(n, tuple(rays), tuple(cones))


def forest_from_fano_fan(fan: Fan) -> SignedForest:
    """
    Read the forest back from the primitive collections. They must be n
    disjoint pairs covering every ray; the smaller ray index of a pair plays v.
    """
    if not fan.is_smooth():
        raise NotBottFanError("A Bott fan is smooth")
    collections = fan.primitive_collections()
    n = fan.rank
    covered = sorted(r for c in collections for r in c)
    if any(len(c) != 2 for c in collections) or covered != list(range(len(fan.rays))):
        raise NotBottFanError(f"Primitive collections {collections} are not disjoint pairs")
    if len(collections) != n:
        raise NotBottFanError(f"Expected {n} primitive pairs, found {len(collections)}")

    pairs = sorted(collections)
    owner: Dict[Vector, Tuple[int, int]] = {}
    for index, (a, b) in enumerate(pairs, start=1):
        owner[fan.rays[a]] = (index, 1)
        owner[fan.rays[b]] = (index, -1)
    parents: List[Optional[int]] = []
    signs: List[Optional[int]] = []
    for a, b in pairs:
        total = tuple(x + y for x, y in zip(fan.rays[a], fan.rays[b]))
        if not any(total):
            parents.append(None)
            signs.append(None)
            continue
        if total not in owner:
            raise NotBottFanError(f"v + w = {total} is neither zero nor a ray")
        parent, sign = owner[total]
        parents.append(parent)
        signs.append(sign)
    try:
        return SignedForest(n, tuple(parents), tuple(signs))
    except ParseError as e:
        raise NotBottFanError(f"The primitive relations do not form a forest: {e.message}")


def forest_class_key(forest: SignedForest) -> str:
    return forest.class_key()


def round_trip(forest: SignedForest) -> bool:
    """forest -> fan -> forest lands in the same class."""
    return forest_class_key(forest_from_fano_fan(fano_bott_from_forest(forest))) == (
        forest_class_key(forest)
    )


def bott_classification_check(n: int, progress: bool = False) -> dict:
    """
    Forests in one class give isomorphic fans; representatives of different
    classes do not.
    """
    orbits = sf_orbits(n)
    representatives = [fano_bott_from_forest(orbit[0]) for orbit in orbits]
    witnesses = []
    for orbit, fan in tqdm(
        list(zip(orbits, representatives)), disable=not progress, desc="bott classes"
    ):
        for forest in orbit[1:]:
            if not fan_isomorphic(fan, fano_bott_from_forest(forest)):
                witnesses.append({"same_class": True, "forest": forest.to_dict()})
    for (i, first), (j, second) in itertools.combinations(enumerate(representatives), 2):
        if fan_isomorphic(first, second):
            witnesses.append({"same_class": False, "classes": [i, j]})
    if witnesses:
        logger.warning(f"Bott classification on n={n}: {len(witnesses)} witnesses")
    return {"n": n, "classes": len(orbits), "holds": not witnesses, "witnesses": witnesses}


def classes_report(n: int) -> dict:
    classes = sf_classes(n)
    return {
        "n": n,
        "count": len(classes),
        "note": class_count_note(n),
        "classes": [
            {"forest": forest.to_dict(), "key": forest_class_key(forest)} for forest in classes
        ],
    }
