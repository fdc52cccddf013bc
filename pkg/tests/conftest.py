import random

import pytest

from combinatorics.permutation import Permutation
from varieties.orbit_closures import FlagMatrix


@pytest.fixture
def p():
    """Shorthand parser: p("2143")."""
    return Permutation.parse


@pytest.fixture
def alpha_beta_flag():
    """A rank-3 flag whose orbit closure has four fixed points."""
    return FlagMatrix(((1, 1, 0), (1, 0, 1), (1, 0, 0)))


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(autouse=True)
def isolated_env(monkeypatch):
    for name in (
        "TOC_SEED",
        "TOC_SAMPLES",
        "TOC_JOBS",
        "TOC_FORMAT",
        "TOC_PROGRESS",
        "TOC_CACHE_DIR",
        "TOC_MAX_N_GROUP",
        "TOC_MAX_N_LATTICE",
    ):
        monkeypatch.delenv(name, raising=False)
