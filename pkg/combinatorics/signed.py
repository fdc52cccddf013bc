"""
Signed permutations (types B/C, and type D through the parity flag).

One-line notation writes barred entries with a leading ``-``: ``-23-14`` or
``-2,3,-1,4``. Only the algebraic retraction is defined on these; there is no
signed Bruhat order here.
"""

import re
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from shared.errors import ParseError

PARITY_NONE = "none"
PARITY_EVEN = "even"


@dataclass(frozen=True)
class SignedPermutation:
    images: Tuple[int, ...]
    parity_constraint: str = PARITY_NONE

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if 0 in images or sorted(abs(x) for x in images) != list(range(1, len(images) + 1)):
            raise ParseError(f"{images} is not a signed permutation")
        if self.parity_constraint not in (PARITY_NONE, PARITY_EVEN):
            raise ParseError(f"Unknown parity constraint {self.parity_constraint!r}")
        if self.parity_constraint == PARITY_EVEN and self.negatives % 2:
            raise ParseError(f"{self.format()} has an odd number of bars")

    @classmethod
    def parse(
        cls, text: Union[str, Sequence[int]], parity_constraint: str = PARITY_NONE
    ) -> "SignedPermutation":
        if not isinstance(text, str):
            return cls(tuple(text), parity_constraint)
        raw = text.strip()
        if "," in raw or " " in raw:
            parts = [p for p in re.split(r"[,\s]+", raw) if p]
        else:
            parts = re.findall(r"-?\d", raw)
            if "".join(parts) != raw:
                raise ParseError(f"Cannot parse signed permutation from {text!r}")
        try:
            return cls(tuple(int(p) for p in parts), parity_constraint)
        except ValueError:
            raise ParseError(f"Cannot parse signed permutation from {text!r}")

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def negatives(self) -> int:
        return sum(1 for x in self.images if x < 0)

    def __call__(self, i: int) -> int:
        """u(-i) = -u(i)."""
        value = self.images[abs(i) - 1]
        return value if i > 0 else -value

    def __str__(self) -> str:
        return self.format()

    def format(self) -> str:
        if self.n <= 9:
            return "".join(str(x) for x in self.images)
        return ",".join(str(x) for x in self.images)

    def alphabet(self) -> List[int]:
        """u(1) < ... < u(n) < u(-n) < ... < u(-1)."""
        forward = [self(i) for i in range(1, self.n + 1)]
        return forward + [-x for x in reversed(forward)]
