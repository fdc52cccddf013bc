import os
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from shared.errors import BoundsError

load_dotenv()

OUTPUT_FORMATS = ("json", "csv", "text")


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name, "")
    try:
        return int(raw) if raw.strip() else default
    except ValueError:
        raise BoundsError(f"Environment variable {name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class RunConfig:
    command: str = ""
    n: Optional[int] = None
    seed: int = 0
    samples: int = 50
    output_format: str = "json"
    jobs: int = 1
    limit: Optional[int] = None
    progress: bool = True
    cache_dir: str = ""
    max_n_group: int = 7
    max_n_lattice: int = 5
    arguments: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_env(cls, **overrides: Any) -> "RunConfig":
        config = cls(
            seed=_env_int("TOC_SEED", 0),
            samples=_env_int("TOC_SAMPLES", 50),
            output_format=os.getenv("TOC_FORMAT", "json"),
            jobs=_env_int("TOC_JOBS", 1),
            progress=os.getenv("TOC_PROGRESS", "1") not in ("0", "false", "False", ""),
            cache_dir=os.getenv("TOC_CACHE_DIR", ""),
            max_n_group=_env_int("TOC_MAX_N_GROUP", 7),
            max_n_lattice=_env_int("TOC_MAX_N_LATTICE", 5),
        )
        overrides = {k: v for k, v in overrides.items() if v is not None}
        return replace(config, **overrides)

    def validate(self) -> "RunConfig":
        if self.output_format not in OUTPUT_FORMATS:
            raise BoundsError(f"Unknown output format: {self.output_format}")
        if self.jobs < 1:
            raise BoundsError("jobs must be at least 1")
        if self.samples < 0:
            raise BoundsError("samples must be non-negative")
        if self.limit is not None and self.limit < 1:
            raise BoundsError("limit must be positive")
        if self.n is not None and not 1 <= self.n <= self.max_n_group:
            raise BoundsError(f"n={self.n} outside 1..{self.max_n_group}")
        return self

    def validate_rank(self, n: int) -> None:
        if not 1 <= n <= self.max_n_group:
            raise BoundsError(f"n={n} outside 1..{self.max_n_group} (TOC_MAX_N_GROUP)")

    def check_lattice_bound(self, n: int) -> None:
        if n > self.max_n_lattice:
            raise BoundsError(
                f"n={n} exceeds the face-lattice bound {self.max_n_lattice} (TOC_MAX_N_LATTICE)"
            )

    def as_dict(self) -> Dict[str, Any]:
        # reproducibility keys only; cache location and progress bars do not change output
        data = asdict(self)
        data.pop("cache_dir")
        data.pop("progress")
        return data
