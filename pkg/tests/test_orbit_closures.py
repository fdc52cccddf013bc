import random

import pytest

from combinatorics.permutation import all_permutations, identity
from shared.config import RunConfig
from shared.errors import ParseError, SingularMatrixError
from varieties.orbit_closures import (
    FlagMatrix,
    fixed_points,
    geometric_retraction,
    moment_polytope,
    opposite_cell_of,
    orbit_fan,
    plucker_support,
    random_flag,
    retraction_map,
    torus_coxeter_check,
)

SAMPLES = RunConfig().samples
ZERO_PROBABILITIES = (0.0, 0.3, 0.5)


class TestFlagMatrix:
    def test_parse_csv(self):
        x = FlagMatrix.parse_csv("1, 1/2\n0, 3\n")
        assert x.n == 2
        assert x.to_csv() == "1,1/2\n0,3\n"

    def test_bad_entries(self):
        with pytest.raises(ParseError):
            FlagMatrix.parse_csv("1,a\n0,1\n")
        with pytest.raises(ParseError):
            FlagMatrix.parse_csv("1,2,3\n0,1\n")

    def test_singular(self):
        with pytest.raises(SingularMatrixError):
            FlagMatrix(((1, 2), (2, 4)))

    def test_seeded_random_flags_repeat(self):
        assert random_flag(3, random.Random(1)) == random_flag(3, random.Random(1))


class TestFixedPoints:
    def test_two_parameter_flag(self, alpha_beta_flag, p):
        subset = fixed_points(alpha_beta_flag)
        assert set(subset) == {p("123"), p("132"), p("213"), p("312")}

    def test_plucker_support(self, alpha_beta_flag):
        support = plucker_support(alpha_beta_flag)
        assert support[1] == {frozenset({1}), frozenset({2}), frozenset({3})}
        assert not support.is_generic()
        assert support.to_dict()["3"] == ["123"]

    def test_identity_flag(self):
        assert set(fixed_points(FlagMatrix.identity(4))) == {identity(4)}

    def test_permutation_flag(self, p):
        w = p("3142")
        assert set(fixed_points(FlagMatrix.of_permutation(w))) == {w}

    def test_generic_flag(self):
        x = FlagMatrix(((1, 0, 0), (1, 1, 0), (1, 2, 1)))
        assert plucker_support(x).is_generic()
        assert len(fixed_points(x)) == 6
        assert moment_polytope(x).dim == 2


class TestRetraction:
    def test_opposite_cell(self, p):
        assert opposite_cell_of(FlagMatrix.identity(3)) == identity(3)
        w = p("2413")
        assert opposite_cell_of(FlagMatrix.of_permutation(w)) == w

    def test_geometric_retraction(self, alpha_beta_flag, p):
        assert geometric_retraction(alpha_beta_flag, p("231")) == p("213")
        assert geometric_retraction(alpha_beta_flag, p("321")) == p("312")
        for y in fixed_points(alpha_beta_flag):
            assert geometric_retraction(alpha_beta_flag, y) == y

    def test_parallel_map(self, alpha_beta_flag):
        assert retraction_map(alpha_beta_flag, jobs=2) == retraction_map(alpha_beta_flag)


class TestOrbitFan:
    def test_fibers(self, alpha_beta_flag, p):
        fan = orbit_fan(alpha_beta_flag)
        assert fan.fibers == {
            p("123"): (p("123"),),
            p("132"): (p("132"),),
            p("213"): (p("213"), p("231")),
            p("312"): (p("312"), p("321")),
        }

    def test_fibers_are_connected_and_convex(self, alpha_beta_flag):
        fan = orbit_fan(alpha_beta_flag)
        for y in fan.labels:
            assert fan.chamber_graph_connected(y)
            assert fan.fiber_is_convex(y)

    def test_fan_is_normal_fan_of_moment_polytope(self, alpha_beta_flag):
        fan = orbit_fan(alpha_beta_flag).to_fan()
        assert len(fan.rays) == 4
        assert fan.is_complete()

    def test_retractions_agree(self, alpha_beta_flag):
        report = torus_coxeter_check(alpha_beta_flag)
        assert report["is_matroid"]
        assert report["agree"]
        assert report["disagreements"] == []

    def test_retractions_agree_on_random_flags(self):
        rng = random.Random(11)
        for k in range(SAMPLES):
            zero_probability = ZERO_PROBABILITIES[k % len(ZERO_PROBABILITIES)]
            report = torus_coxeter_check(random_flag(4, rng, zero_probability))
            assert report["agree"], report["disagreements"]

    def test_every_chamber_is_covered(self):
        x = random_flag(3, random.Random(5), 0.4)
        fan = orbit_fan(x)
        covered = [u for fiber in fan.fibers.values() for u in fiber]
        assert sorted(covered) == sorted(all_permutations(3))
        assert set(fan.labels) == set(fixed_points(x))
