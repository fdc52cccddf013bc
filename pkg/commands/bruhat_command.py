from typing import Any, Dict

from combinatorics.bruhat import BruhatInterval, bruhat_leq
from combinatorics.permutation import Permutation, check_rank
from commands.abstract_command import AbstractCommand


class BruhatCommand(AbstractCommand):
    name = "bruhat"

    def compute(self, arguments: Dict[str, Any]) -> dict:
        v = Permutation.parse(arguments["v"])
        w = Permutation.parse(arguments["w"])
        n = check_rank(v, w)
        self.config.validate_rank(n)
        below, above = bruhat_leq(v, w), bruhat_leq(w, v)
        output = {
            "v": v.format(),
            "w": w.format(),
            "lengths": [v.length, w.length],
            "v_leq_w": below,
            "w_leq_v": above,
            "comparable": below or above,
        }
        if below or above:
            low, high = (v, w) if below else (w, v)
            output["interval_size"] = len(BruhatInterval(low, high))
        self.logger.info(f"Compared {v.format()} and {w.format()}")
        return output
