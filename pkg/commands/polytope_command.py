from typing import Any, Dict, List

from combinatorics.bruhat import bruhat_leq
from combinatorics.permutation import Permutation, check_rank
from commands.abstract_command import AbstractCommand
from geometry.fan import normal_fan
from geometry.polytope import LatticePolytope
from shared.errors import IntervalError, ParseError
from varieties.matroids import CoxeterSubset, matroid_polytope
from varieties.moment import permutohedron
from varieties.richardson import Q_vw, is_toric
from varieties.schubert import Q_w, complexity

KINDS = ("qw", "qvw", "perm", "matroid")


class PolytopeCommand(AbstractCommand):
    name = "polytope"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        kind = arguments.get("kind")
        values: List[str] = list(arguments.get("values") or [])
        if kind not in KINDS:
            raise ParseError(f"Unknown polytope kind {kind!r}; expected one of {KINDS}")
        output: Dict[str, Any] = {"kind": kind}

        if kind == "qw":
            self._require(values, 1)
            w = Permutation.parse(values[0])
            self.config.check_lattice_bound(w.n)
            polytope = Q_w(w)
            output.update({"w": w.format(), "complexity": complexity(w)})
            output["toric"] = output["complexity"] == 0
        elif kind == "qvw":
            self._require(values, 2)
            v, w = Permutation.parse(values[0]), Permutation.parse(values[1])
            self.config.check_lattice_bound(check_rank(v, w))
            if not bruhat_leq(v, w):
                raise IntervalError(f"{v.format()} is not below {w.format()}")
            polytope = Q_vw(v, w)
            output.update({"v": v.format(), "w": w.format(), "toric": is_toric(v, w)})
        elif kind == "perm":
            self._require(values, 1)
            n = int(values[0])
            self.config.check_lattice_bound(n)
            polytope = permutohedron(n)
        else:
            subset = CoxeterSubset.of(values)
            self.config.check_lattice_bound(subset.n)
            polytope = matroid_polytope(subset)

        output.update(self._describe(polytope))
        if arguments.get("fan") and polytope.dim > 0:
            output["normal_fan"] = normal_fan(polytope).to_dict()
        self.logger.info(f"Described a {polytope.dim}-dimensional {kind} polytope")
        return output

    @staticmethod
    def _require(values: List[str], count: int):
        if len(values) != count:
            raise ParseError(f"Expected {count} permutation argument(s), got {len(values)}")

    @staticmethod
    def _describe(polytope: LatticePolytope) -> dict:
        labels = [str(label) for label in polytope.labels] if polytope.labels else None
        if polytope.dim == 0:
            return {"dim": 0, "f_vector": [1], "vertices": labels or 1, "simple": True}
        non_simple = [i for i in range(len(polytope)) if not polytope.is_simple_at(i)]
        return {
            "dim": polytope.dim,
            "f_vector": polytope.face_lattice().f_vector(),
            "h_polynomial": polytope.h_polynomial().format(),
            "simple": not non_simple,
            "non_simple_vertices": [labels[i] if labels else i for i in non_simple],
            "cube": polytope.is_cube(),
            "edge_directions_are_roots": polytope.edge_directions_are_roots(),
        }
