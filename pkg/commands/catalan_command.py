import json
from typing import Any, Dict, List

from combinatorics.forests import SignedForest
from combinatorics.permutation import Permutation
from combinatorics.trees import (
    Triangulation,
    left_right_trees,
    tree_of_triangulation,
    triangulations,
    unordered_canonical,
    wedderburn_etherington,
)
from commands.abstract_command import AbstractCommand
from shared.errors import ParseError
from varieties.bott import classes_report, fano_bott_from_forest, forest_from_fano_fan, round_trip
from varieties.catalan import (
    atoms_coatoms_vs_trees,
    balanced_index,
    catalan_fan,
    catalan_forest,
    normal_fan_bridge,
    pair_data,
    tree_classes,
)


def _load_json(text: str, what: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"Cannot read {what} JSON: {e}")


class CatalanCommand(AbstractCommand):
    """Triangulations and fans for n, or the head/tail pair data of a permutation."""

    name = "catalan"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        if arguments.get("u"):
            return self._permutation(Permutation.parse(arguments["u"]))
        n = arguments.get("n") or self.config.n
        if not n:
            raise ParseError("catalan needs --n or a permutation")
        n = int(n)
        self.config.validate_rank(n)
        entries = []
        for triangulation in self._limited(triangulations(n)):
            trees = left_right_trees(triangulation)
            entries.append(
                {
                    **triangulation.to_dict(),
                    "tree": unordered_canonical(tree_of_triangulation(triangulation)),
                    "root": trees.root,
                    "balanced_index": balanced_index(triangulation),
                    "fan": catalan_fan(triangulation).to_dict(),
                }
            )
        classes = tree_classes(n)
        return {
            "n": n,
            "triangulations": len(triangulations(n)),
            "tree_classes": {key: len(members) for key, members in classes.items()},
            "wedderburn_etherington": wedderburn_etherington(n + 1)[-1],
            "entries": entries,
        }

    def _limited(self, items: list) -> list:
        return items[: self.config.limit] if self.config.limit else items

    def _permutation(self, u: Permutation) -> dict:
        self.config.check_lattice_bound(u.n + 1)
        output = pair_data(u)
        output["atoms_coatoms"] = atoms_coatoms_vs_trees(u)
        output["normal_fan_matches"] = {
            side: normal_fan_bridge(u, side) for side in ("head", "tail")
        }
        return output

    def is_finding(self, output: dict) -> bool:
        if "atoms_coatoms" not in output:
            return False
        check = output["atoms_coatoms"]
        matches = output["normal_fan_matches"]
        return not (check["atoms_match"] and check["coatoms_match"] and all(matches.values()))

    def rows(self, output: dict) -> List[Dict[str, Any]]:
        if "entries" in output:
            return [
                {"diagonals": e["diagonals"], "tree": e["tree"], "root": e["root"]}
                for e in output["entries"]
            ]
        return super().rows(output)


class BottCommand(AbstractCommand):
    """Fan of a signed forest, forest of a triangulation fan, or the classes of SF_n."""

    name = "bott"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        if arguments.get("forest"):
            forest = SignedForest.from_dict(_load_json(arguments["forest"], "forest"))
            self.config.validate_rank(forest.n)
            fan = fano_bott_from_forest(forest)
            return {
                "forest": forest.to_dict(),
                "key": forest.class_key(),
                "fan": fan.to_dict(),
                "fano": fan.is_fano(),
                "round_trip": round_trip(forest),
            }
        if arguments.get("triangulation"):
            triangulation = Triangulation.from_dict(
                _load_json(arguments["triangulation"], "triangulation")
            )
            self.config.validate_rank(triangulation.n)
            forest = forest_from_fano_fan(catalan_fan(triangulation))
            return {
                "triangulation": triangulation.to_dict(),
                "forest": forest.to_dict(),
                "key": forest.class_key(),
                "round_trip": forest == catalan_forest(triangulation),
            }
        n = arguments.get("n") or self.config.n
        if not n:
            raise ParseError("bott needs --n, a forest file or a triangulation file")
        self.config.validate_rank(int(n))
        return classes_report(int(n))

    def is_finding(self, output: dict) -> bool:
        return output.get("round_trip") is False

    def rows(self, output: dict) -> List[Dict[str, Any]]:
        if "classes" in output:
            return [{"index": i, "key": c["key"]} for i, c in enumerate(output["classes"], 1)]
        return super().rows(output)
