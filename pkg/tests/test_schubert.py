import random

import pytest

from combinatorics.bruhat import BruhatInterval, ReducedWord
from combinatorics.permutation import all_permutations, identity, longest
from geometry.polynomial import polynomial
from shared.errors import IntervalError, RepeatedLettersError
from varieties.moment import moment_image
from varieties.schubert import (
    FANO,
    SINGULAR_C1,
    SMOOTH_C1,
    WEAK_FANO,
    A_w,
    Q_w,
    complexity,
    complexity_one_report,
    coxeter_class_check,
    coxeter_elements,
    edge_list,
    edges_at,
    eulerian,
    eulerian_by_recurrence,
    fano_class,
    fano_class_from_fan,
    g_digraph,
    gamma,
    gamma_tilde,
    is_smooth_at,
    is_Yw_smooth,
    locally_factorial_pattern_test,
    poincare_Yw,
    reduced_char_matrix,
    schubert_fan,
    toric_schubert_report,
)


class TestGraphs:
    def test_reduced_digraph(self, p):
        assert edge_list(gamma(p("3412"), p("2143"))) == [(1, 4), (2, 1), (4, 3)]
        assert (2, 3) in gamma_tilde(p("3412"), p("2143")).edges()

    def test_requires_u_below_w(self, p):
        with pytest.raises(IntervalError):
            gamma(p("1324"), p("2134"))

    def test_smoothness(self, p):
        assert not is_smooth_at(p("3412"), p("3412"))
        assert is_Yw_smooth(longest(3))
        assert all(is_smooth_at(w, identity(4)) for w in all_permutations(4))

    def test_smooth_iff_simple(self):
        for w in all_permutations(4):
            polytope = Q_w(w)
            if polytope.dim < 2:
                continue
            for u in BruhatInterval(identity(4), w).elements:
                assert is_smooth_at(w, u) == polytope.is_simple_at(moment_image(u)), (w, u)

    def test_edges_match_reduced_digraph_on_s4(self):
        for w in all_permutations(4):
            polytope = Q_w(w)
            if len(polytope) < 2:
                continue
            for u in BruhatInterval(identity(4), w).elements:
                index = polytope.vertex_index(moment_image(u))
                neighbours = sorted(polytope.labels[j] for j in polytope.neighbors(index))
                assert edges_at(w, u) == neighbours, (w, u)

    def test_edges_at_simple_vertex(self):
        w = longest(3)
        polytope = Q_w(w)
        u = identity(3)
        index = polytope.vertex_index(u)
        neighbours = sorted(polytope.labels[j] for j in polytope.neighbors(index))
        assert edges_at(w, u) == neighbours

    def test_locally_factorial_patterns(self, p):
        assert not locally_factorial_pattern_test(p("4231"))
        assert locally_factorial_pattern_test(identity(4))


class TestPolynomials:
    def test_eulerian(self):
        assert eulerian(4) == polynomial([1, 11, 11, 1])
        assert eulerian(5) == polynomial([1, 26, 66, 26, 1])
        assert eulerian_by_recurrence(5) == eulerian(5)

    def test_longest_element_gives_eulerian(self):
        assert A_w(longest(4)) == eulerian(4)
        assert poincare_Yw(longest(3)) == polynomial([1, 0, 4, 0, 1])

    def test_singular_examples(self, p):
        assert A_w(p("4231")) == polynomial([1, 7, 11, 1])
        assert poincare_Yw(p("4231")).format() == "1 + 7t^2 + 11t^4 + t^6"
        assert A_w(p("3412")) == polynomial([1, 5, 7, 1])
        assert not A_w(p("3412")).is_palindromic()

    def test_identity(self):
        assert A_w(identity(3)) == polynomial([1])

    def test_h_polynomial_matches_on_s4(self):
        for w in all_permutations(4):
            if Q_w(w).dim == 0:
                assert A_w(w) == polynomial([1])
                continue
            assert Q_w(w).h_polynomial() == A_w(w), w

    def test_h_polynomial_matches_on_sampled_s5(self):
        for w in random.Random(0).sample(list(all_permutations(5)), 30):
            if Q_w(w).dim > 0:
                assert Q_w(w).h_polynomial() == A_w(w), w


class TestClassification:
    def test_complexity(self, p):
        assert complexity(p("3412")) == 1
        assert complexity(longest(3)) == 1
        assert complexity(p("2143")) == 0

    def test_toric_conditions_agree_on_s4(self):
        reports = [toric_schubert_report(w) for w in all_permutations(4)]
        assert all(r["consistent"] for r in reports)
        assert {r["w"] for r in reports if r["toric"]} >= {"1234", "2143", "3142"}

    @pytest.mark.slow
    def test_toric_conditions_agree_on_s5(self):
        assert all(toric_schubert_report(w)["consistent"] for w in all_permutations(5))

    def test_complexity_one(self, p):
        assert complexity_one_report(longest(3))["class"] == SMOOTH_C1
        singular = complexity_one_report(p("3412"))
        assert singular["class"] == SINGULAR_C1
        assert singular["consistent"]

    def test_complexity_one_consistent_on_s4(self):
        assert all(complexity_one_report(w)["consistent"] for w in all_permutations(4))


class TestToricFans:
    def test_char_matrix(self):
        assert reduced_char_matrix(ReducedWord((1, 3, 2, 4))) == [
            [-1, 0, 0, 0],
            [0, -1, 0, 0],
            [1, 1, -1, 0],
            [0, 1, 0, -1],
        ]

    def test_repeated_letters(self):
        with pytest.raises(RepeatedLettersError):
            reduced_char_matrix(ReducedWord((1, 2, 1)))

    def test_g_digraph(self):
        assert edge_list(g_digraph(ReducedWord((1, 3, 2, 4)))) == [(1, 3), (2, 3), (2, 4)]
        assert edge_list(g_digraph(ReducedWord((1, 2, 4, 5)))) == [(1, 2), (3, 4)]

    def test_fano_classes(self):
        word = ReducedWord((2, 1, 3))
        assert fano_class(word) == WEAK_FANO
        assert fano_class_from_fan(word) == WEAK_FANO
        assert fano_class(ReducedWord((1, 2, 3))) == FANO
        assert fano_class_from_fan(ReducedWord((1, 2, 3))) == FANO

    def test_fan_is_smooth_and_complete(self):
        fan = schubert_fan(ReducedWord((1, 3, 2, 4)))
        assert fan.is_smooth()
        assert fan.is_complete()

    def test_coxeter_elements(self):
        assert len(coxeter_elements(4)) == 4
        assert coxeter_class_check(4)["agree"]
