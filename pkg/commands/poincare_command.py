from typing import Any, Dict

from combinatorics.permutation import Permutation
from commands.abstract_command import AbstractCommand
from varieties.schubert import A_w, Q_w, is_Yw_smooth, poincare_Yw


class PoincareCommand(AbstractCommand):
    name = "poincare"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        w = Permutation.parse(arguments["w"])
        self.config.check_lattice_bound(w.n)
        a_w = A_w(w)
        h = Q_w(w).h_polynomial() if Q_w(w).dim > 0 else a_w
        return {
            "w": w.format(),
            "A_w": a_w.format(),
            "poincare": poincare_Yw(w).format(),
            "palindromic": a_w.is_palindromic(),
            "smooth": is_Yw_smooth(w),
            "h_polynomial": h.format(),
            "h_matches": h == a_w,
        }

    def is_finding(self, output: dict) -> bool:
        return not output["h_matches"]
