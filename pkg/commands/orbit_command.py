import itertools
import json
import random
from typing import Any, Dict, List

from combinatorics.permutation import all_permutations
from combinatorics.signed import SignedPermutation
from commands.abstract_command import AbstractCommand
from shared.errors import ParseError
from varieties.matroids import (
    CoxeterSubset,
    algebraic_retraction,
    is_coxeter_matroid,
    matroid_retraction,
)
from varieties.orbit_closures import (
    FlagMatrix,
    fixed_points,
    orbit_fan,
    plucker_support,
    random_flag,
    torus_coxeter_check,
)

SPARSE_ZEROS = 0.4


def load_flag(arguments: Dict[str, Any], seed: int) -> FlagMatrix:
    """The matrix text if given, otherwise a seeded sparse random flag of size n."""
    if arguments.get("matrix"):
        return FlagMatrix.parse_csv(arguments["matrix"])
    n = arguments.get("n")
    if not n:
        raise ParseError("Give a matrix file or --n for a random flag")
    return random_flag(int(n), random.Random(seed), SPARSE_ZEROS)


class OrbitCommand(AbstractCommand):
    name = "orbit"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        x = load_flag(arguments, self.config.seed)
        self.config.validate_rank(x.n)
        progress = self.config.progress
        fan = orbit_fan(x, self.config.jobs, progress)
        check = torus_coxeter_check(x, self.config.jobs, progress)
        subset = fixed_points(x)
        self.logger.info(f"Orbit closure of a rank-{x.n} flag has {len(subset)} fixed points")
        return {
            "n": x.n,
            "matrix": x.to_csv().strip().split("\n"),
            "plucker_support": plucker_support(x).to_dict(),
            "fixed_points": subset.to_dict()["elements"],
            "matroid": is_coxeter_matroid(subset).to_dict(),
            "retraction": {u.format(): y.format() for u, y in sorted(fan.retraction.items())},
            "fan": fan.to_dict()["fibers"],
            "agree": check["agree"],
            "disagreements": check["disagreements"],
        }

    def is_finding(self, output: dict) -> bool:
        return not output["agree"]

    def rows(self, output: dict) -> List[Dict[str, Any]]:
        return [{"u": u, "retraction": y} for u, y in output["retraction"].items()]


class RetractionCommand(AbstractCommand):
    name = "retraction"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        if arguments.get("matroid"):
            try:
                subset = CoxeterSubset.from_dict(json.loads(arguments["matroid"]))
            except (json.JSONDecodeError, KeyError, TypeError) as e:
                raise ParseError(f"Cannot read a Coxeter subset: {e}")
        else:
            subset = fixed_points(load_flag(arguments, self.config.seed))
        self.config.validate_rank(subset.n)
        if subset.signed:
            return self._signed_table(subset)
        check = is_coxeter_matroid(subset, self.config.jobs, self.config.progress)
        table = []
        agree = True
        for u in all_permutations(subset.n):
            row = {"u": u.format(), "algebraic": algebraic_retraction(subset, u).format()}
            if check.is_matroid:
                row["matroid"] = matroid_retraction(subset, u).format()
                agree = agree and row["matroid"] == row["algebraic"]
            table.append(row)
        return {
            "subset": subset.to_dict(),
            "matroid": check.to_dict(),
            "table": table,
            "agree": check.is_matroid and agree,
        }

    def is_finding(self, output: dict) -> bool:
        return bool(output["matroid"]) and output["matroid"]["is_matroid"] and not output["agree"]

    def rows(self, output: dict) -> List[Dict[str, Any]]:
        return output["table"]

    @staticmethod
    def _signed_table(subset: CoxeterSubset) -> dict:
        """Only the algebraic retraction exists for signed subsets."""
        table = []
        for images in itertools.permutations(range(1, subset.n + 1)):
            for signs in itertools.product((1, -1), repeat=subset.n):
                u = SignedPermutation(tuple(s * x for s, x in zip(signs, images)))
                table.append(
                    {"u": u.format(), "algebraic": algebraic_retraction(subset, u).format()}
                )
        return {"subset": subset.to_dict(), "matroid": None, "table": table, "agree": True}
