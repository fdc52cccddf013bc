"""
Moment map images of permutations and the polytopes they span.
"""

from typing import Iterable, Optional, Sequence, Tuple

from combinatorics.permutation import Permutation, all_permutations
from geometry.polytope import LatticePolytope


def moment_image(u: Permutation) -> Tuple[int, ...]:
    """mu(u) = (u^-1(1), ..., u^-1(n))."""
    return u.inverse.images


def act(w: Permutation, nu: Sequence[int]) -> Tuple[int, ...]:
    """(w . nu)_i = nu_{w^-1(i)}."""
    inv = w.inverse
    return tuple(nu[inv(i) - 1] for i in range(1, w.n + 1))


def moment_polytope_of(
    perms: Iterable[Permutation], nu: Optional[Sequence[int]] = None
) -> LatticePolytope:
    """Convex hull of the (nu-weighted) moment points, labelled by permutation."""
    members = sorted(set(perms))
    if nu is None:
        points = [moment_image(u) for u in members]
    else:
        points = [act(u, nu) for u in members]
    return LatticePolytope.from_points(points, members)


def permutohedron(n: int) -> LatticePolytope:
    members = list(all_permutations(n))
    return LatticePolytope([moment_image(u) for u in members], members, check=False)
