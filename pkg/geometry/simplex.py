"""
Exact rational simplex with Bland's rule.

The tableau stores a dictionary ``x_B = b - A x_N`` and an objective row ``c``
to be maximised. Feasibility of ``A x = b, x >= 0`` is decided by the first
phase: one artificial basic variable per row, objective = sum of the rows.
"""

from fractions import Fraction
from typing import List, Optional, Sequence

from shared.utils import setup_logger

logger = setup_logger(__name__)

Vector = Sequence[Fraction]

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
GO_ON = "go_on"


class SimplexTableau:
    def __init__(self, m: int, n: int):
        zero = Fraction(0)
        self.m = m
        self.n = n
        self.A = [[zero] * n for _ in range(m)]
        self.b = [zero] * m
        self.c = [zero] * n
        self.nb_vars = list(range(n))
        self.b_vars = list(range(n, n + m))
        self.pivots = 0

    def pivot(self, i: int, j: int):
        piv = self.A[i][j]
        delta = self.c[j] / piv
        for col in range(self.n):
            self.c[col] -= delta * self.A[i][col]
        self.c[j] = -delta
        for col in range(self.n):
            self.A[i][col] = 1 / piv if col == j else self.A[i][col] / piv
        self.b[i] /= piv
        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f == 0:
                continue
            for col in range(self.n):
                self.A[k][col] = -f / piv if col == j else self.A[k][col] - f * self.A[i][col]
            self.b[k] -= f * self.b[i]
        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]
        self.pivots += 1

    def bland_primal_step(self) -> str:
        try:
            _, j = min((self.nb_vars[col], col) for col in range(self.n) if self.c[col] > 0)
        except ValueError:
            return OPTIMAL
        try:
            _, _, i = min(
                (self.b[row] / self.A[row][j], self.b_vars[row], row)
                for row in range(self.m)
                if self.A[row][j] > 0
            )
        except ValueError:
            return UNBOUNDED
        self.pivot(i, j)
        return GO_ON

    def bland_primal(self) -> str:
        while True:
            ret = self.bland_primal_step()
            if ret in (OPTIMAL, UNBOUNDED):
                return ret

    def first_phase_cost(self):
        for j in range(self.n):
            self.c[j] = sum(self.A[i][j] for i in range(self.m))

    def value_of(self, var: int) -> Fraction:
        if var in self.b_vars:
            return self.b[self.b_vars.index(var)]
        return Fraction(0)


def find_feasible_point(
    matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """A point of {x >= 0 : matrix x = rhs}, or None when the system is infeasible."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    tableau = SimplexTableau(m, n)
    for i, (row, value) in enumerate(zip(matrix, rhs)):
        flip = -1 if value < 0 else 1
        tableau.A[i] = [Fraction(flip * entry) for entry in row]
        tableau.b[i] = Fraction(flip * value)
    tableau.first_phase_cost()
    tableau.bland_primal()
    artificial = sum(tableau.value_of(var) for var in range(n, n + m))
    logger.debug(f"First phase finished after {tableau.pivots} pivots, residual {artificial}")
    if artificial != 0:
        return None
    return [tableau.value_of(var) for var in range(n)]


def convex_combination(
    target: Sequence[int], points: Sequence[Sequence[int]]
) -> Optional[List[Fraction]]:
    """Weights mu >= 0 with sum mu = 1 and sum mu_i p_i = target, if any."""
    if not points:
        return None
    dim = len(target)
    matrix = [[Fraction(p[k]) for p in points] for k in range(dim)]
    matrix.append([Fraction(1)] * len(points))
    rhs = [Fraction(x) for x in target] + [Fraction(1)]
    return find_feasible_point(matrix, rhs)


def segment_meets_hull(
    a: Sequence[int], b: Sequence[int], points: Sequence[Sequence[int]]
) -> Optional[List[Fraction]]:
    """
    Solve alpha a + beta b = sum mu_i p_i, alpha + beta = 1, sum mu = 1, all >= 0.
    Returns [alpha, beta, mu...] or None when the segment misses the hull.
    """
    if not points:
        return None
    dim = len(a)
    matrix = []
    for k in range(dim):
        matrix.append([Fraction(a[k]), Fraction(b[k])] + [Fraction(-p[k]) for p in points])
    matrix.append([Fraction(1), Fraction(1)] + [Fraction(0)] * len(points))
    matrix.append([Fraction(0), Fraction(0)] + [Fraction(1)] * len(points))
    rhs = [Fraction(0)] * dim + [Fraction(1), Fraction(1)]
    return find_feasible_point(matrix, rhs)


def cone_interiors_meet(
    first: Sequence[Sequence[int]], second: Sequence[Sequence[int]]
) -> bool:
    """Whether sum a_i r_i = sum b_j s_j has a solution with every a_i, b_j >= 1."""
    dim = len(first[0])
    matrix = []
    rhs = []
    for k in range(dim):
        matrix.append([Fraction(r[k]) for r in first] + [Fraction(-s[k]) for s in second])
        rhs.append(Fraction(sum(s[k] for s in second) - sum(r[k] for r in first)))
    return find_feasible_point(matrix, rhs) is not None
