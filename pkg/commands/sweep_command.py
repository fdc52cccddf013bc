from typing import Any, Callable, Dict, List

from tqdm import tqdm

from combinatorics.forests import class_count_note, sf_classes
from combinatorics.permutation import all_permutations
from commands.abstract_command import AbstractCommand
from shared.errors import ParseError
from varieties.catalan import classification_check
from varieties.richardson import (
    bruhat_pairs,
    complexity_one_richardson_search,
    cube_theorem_check,
    dimension_symmetry,
    inverse_simplicity_search,
    simple_endpoints_search,
)
from varieties.schubert import (
    complexity_one_report,
    palindromic_poincare_search,
    smoothness_conjecture_search,
    toric_schubert_report,
)

FAMILIES = (
    "toric-schubert",
    "complexity-one",
    "richardson",
    "sf-classes",
    "catalan",
    "conjecture-search",
)


class SweepCommand(AbstractCommand):
    name = "sweep"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        family = arguments.get("family")
        n = arguments.get("n") or self.config.n
        if family not in FAMILIES:
            raise ParseError(f"Unknown sweep family {family!r}; expected one of {FAMILIES}")
        if not n:
            raise ParseError("A sweep needs --n")
        n = int(n)
        self.config.validate_rank(n)
        handlers: Dict[str, Callable[[int], dict]] = {
            "toric-schubert": self._toric_schubert,
            "complexity-one": self._complexity_one,
            "richardson": self._richardson,
            "sf-classes": self._sf_classes,
            "catalan": self._catalan,
            "conjecture-search": self._conjecture_search,
        }
        self.logger.info(f"Sweeping {family} on n={n}")
        return {"family": family, "n": n, **handlers[family](n)}

    def is_finding(self, output: dict) -> bool:
        return output.get("holds") is False

    def rows(self, output: dict) -> List[Dict[str, Any]]:
        return output.get("rows") or super().rows(output)

    def _limited(self, items: list) -> list:
        return items[: self.config.limit] if self.config.limit else items

    def _toric_schubert(self, n: int) -> dict:
        self.config.check_lattice_bound(n)
        perms = self._limited(list(all_permutations(n)))
        reports = [
            toric_schubert_report(w)
            for w in tqdm(perms, disable=not self.config.progress, desc="toric")
        ]
        bad = [r for r in reports if not r["consistent"]]
        rows = [{"w": r["w"], **r["conditions"], "toric": r["toric"]} for r in reports]
        return {
            "checked": len(reports),
            "toric": sum(r["toric"] for r in reports),
            "holds": not bad,
            "witnesses": bad,
            "rows": rows,
        }

    def _complexity_one(self, n: int) -> dict:
        self.config.check_lattice_bound(n)
        perms = self._limited(list(all_permutations(n)))
        reports = [
            complexity_one_report(w)
            for w in tqdm(perms, disable=not self.config.progress, desc="complexity-one")
        ]
        counts: Dict[str, int] = {}
        for r in reports:
            counts[r["class"]] = counts.get(r["class"], 0) + 1
        bad = [r for r in reports if not r["consistent"]]
        rows = [{"w": r["w"], "complexity": r["complexity"], "class": r["class"]} for r in reports]
        return {"counts": counts, "holds": not bad, "witnesses": bad, "rows": rows}

    def _richardson(self, n: int) -> dict:
        self.config.check_lattice_bound(n)
        pairs = self._limited(list(bruhat_pairs(n)))
        rows, bad = [], []
        for v, w in tqdm(pairs, disable=not self.config.progress, desc="richardson"):
            report = cube_theorem_check(v, w)
            report["dimension_symmetry"] = dimension_symmetry(v, w)
            rows.append(report)
            if not (report["consistent"] and report["dimension_symmetry"]):
                bad.append(report)
        return {"checked": len(rows), "holds": not bad, "witnesses": bad, "rows": rows}

    def _sf_classes(self, n: int) -> dict:
        classes = sf_classes(n)
        return {
            "count": len(classes),
            "note": class_count_note(n),
            "classes": [forest.to_dict() for forest in classes],
            "rows": [{"index": i, "key": f.class_key()} for i, f in enumerate(classes, 1)],
        }

    def _catalan(self, n: int) -> dict:
        samples = self.config.samples if n >= 5 else None
        report = classification_check(
            n, samples=samples, seed=self.config.seed, progress=self.config.progress
        )
        report.pop("n")
        return report

    def _conjecture_search(self, n: int) -> dict:
        """Report-only harnesses; witnesses are data, not failures."""
        self.config.check_lattice_bound(n)
        progress = self.config.progress
        return {
            "smoothness": smoothness_conjecture_search(n, progress),
            "palindromic_poincare": palindromic_poincare_search(n, progress),
            "simple_endpoints": simple_endpoints_search(n, progress),
            "inverse_simplicity": inverse_simplicity_search(n, progress),
            "complexity_one_richardson": complexity_one_richardson_search(n, progress),
        }
