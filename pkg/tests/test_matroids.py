import itertools
import random

import pytest

from combinatorics.permutation import Permutation, all_permutations, identity
from combinatorics.signed import SignedPermutation
from shared.config import RunConfig
from shared.errors import DegenerateInputError, NotAMatroidError, ParseError, RankMismatchError
from varieties.matroids import (
    CoxeterSubset,
    algebraic_retraction,
    closest_point_conditions,
    distance_to_set,
    fano_plane_matroid,
    gelfand_serganova_check,
    graph_distance,
    is_coxeter_matroid,
    matroid_polytope,
    matroid_retraction,
    maxima_at,
    moment_retraction,
    retraction_table,
    table_rows,
)
from varieties.orbit_closures import fixed_points, random_flag

SAMPLES = RunConfig().samples


def nonempty_subsets(n: int, max_size: int):
    perms = list(all_permutations(n))
    for size in range(1, max_size + 1):
        yield from itertools.combinations(perms, size)


class TestCoxeterSubset:
    def test_of_strings(self):
        subset = CoxeterSubset.of(["2134", "1423"])
        assert subset.n == 4
        assert subset.to_dict() == {"n": 4, "elements": ["1423", "2134"]}

    def test_empty_subset(self):
        with pytest.raises(DegenerateInputError):
            CoxeterSubset.of([])

    def test_mixed_ranks(self):
        with pytest.raises(RankMismatchError):
            CoxeterSubset.of(["123", "1234"])

    def test_declared_rank_must_match(self):
        with pytest.raises(RankMismatchError):
            CoxeterSubset.from_dict({"n": 5, "elements": ["1234"]})

    def test_signed_elements(self):
        subset = CoxeterSubset.of(["1-423", "2413"])
        assert subset.signed
        with pytest.raises(ParseError):
            matroid_retraction(subset, Permutation.parse("1234"))


class TestMaximality:
    def test_whole_group_is_a_matroid(self):
        subset = CoxeterSubset(3, frozenset(all_permutations(3)))
        assert is_coxeter_matroid(subset).is_matroid

    def test_non_matroid_has_witness(self):
        subset = CoxeterSubset.of(["123", "231"])
        check = is_coxeter_matroid(subset)
        assert not check.is_matroid
        assert check.witness is not None
        assert len(maxima_at(subset, check.witness)) > 1
        assert check.to_dict()["witness"] == check.witness.format()

    def test_parallel_matches_serial(self):
        subset = CoxeterSubset.of(["1234", "2341", "4123"])
        serial = is_coxeter_matroid(subset)
        assert is_coxeter_matroid(subset, jobs=2).is_matroid == serial.is_matroid

    def test_gelfand_serganova_agrees(self):
        for elements in (["123", "321"], ["123", "231"], ["123", "132", "213", "312"]):
            assert gelfand_serganova_check(CoxeterSubset.of(elements))["agree"]

    def test_gelfand_serganova_on_all_subsets_of_s3(self):
        for elements in nonempty_subsets(3, 6):
            report = gelfand_serganova_check(CoxeterSubset.of(elements))
            assert report["agree"], elements

    @pytest.mark.slow
    def test_gelfand_serganova_on_small_subsets_of_s4(self):
        for elements in nonempty_subsets(4, 6):
            report = gelfand_serganova_check(CoxeterSubset.of(elements))
            assert report["agree"], elements

    @pytest.mark.slow
    def test_fano_plane_matroid(self):
        subset = fano_plane_matroid()
        assert len(subset) == 4032
        assert is_coxeter_matroid(subset).is_matroid


class TestRetractions:
    def test_algebraic_differs_from_closest(self, p):
        subset = CoxeterSubset.of(["1423", "2134"])
        u = p("1324")
        assert distance_to_set(u, subset) == (2, [p("2134")])
        assert algebraic_retraction(subset, u) == p("1423")

    def test_signed_algebraic_retraction(self):
        subset = CoxeterSubset.of(["1-423", "14-3-2", "2413", "-3-41-2"])
        u = SignedPermutation.parse("-23-14")
        assert algebraic_retraction(subset, u).format() == "14-3-2"

    def test_signed_elements_need_signed_reference(self, p):
        subset = CoxeterSubset.of(["1-423", "2413"])
        with pytest.raises(ParseError):
            algebraic_retraction(subset, p("1234"))

    def test_matroid_retraction_fails_off_matroids(self):
        subset = CoxeterSubset.of(["123", "231"])
        with pytest.raises(NotAMatroidError):
            retraction_table(subset, "matroid")

    def test_unknown_kind(self):
        with pytest.raises(ParseError):
            retraction_table(CoxeterSubset.of(["12"]), "bogus")

    def test_retraction_is_identity_on_the_subset(self, alpha_beta_flag):
        subset = fixed_points(alpha_beta_flag)
        for m in subset:
            assert matroid_retraction(subset, m) == m

    def test_three_retractions_agree_on_orbit_matroids(self):
        rng = random.Random(0)
        for _ in range(SAMPLES):
            subset = fixed_points(random_flag(4, rng, 0.4))
            assert is_coxeter_matroid(subset).is_matroid
            for u in all_permutations(4):
                expected = matroid_retraction(subset, u)
                assert algebraic_retraction(subset, u) == expected
                assert moment_retraction(subset, u) == expected
                distance, closest = distance_to_set(u, subset)
                assert closest == [expected]

    def test_table_rows(self, alpha_beta_flag):
        subset = fixed_points(alpha_beta_flag)
        rows = dict(table_rows(retraction_table(subset, "algebraic")))
        assert rows["231"] == "213"
        assert rows["321"] == "312"
        assert len(rows) == 6


class TestMetric:
    def test_graph_distance(self, p):
        assert graph_distance(p("1243"), p("3214")) == 4
        assert graph_distance(identity(3), identity(3)) == 0

    def test_closest_point_conditions(self):
        assert closest_point_conditions(CoxeterSubset(3, frozenset(all_permutations(3))))
        assert not closest_point_conditions(CoxeterSubset.of(["1423", "2134"]))


class TestMatroidPolytope:
    def test_default_weights(self):
        polytope = matroid_polytope(CoxeterSubset(3, frozenset(all_permutations(3))))
        assert polytope.dim == 2
        assert len(polytope) == 6

    def test_weights_must_increase(self):
        with pytest.raises(DegenerateInputError):
            matroid_polytope(CoxeterSubset.of(["123"]), (1, 1, 2))
        with pytest.raises(RankMismatchError):
            matroid_polytope(CoxeterSubset.of(["123"]), (1, 2))
