import pytest

from combinatorics.permutation import from_word, identity, longest
from shared.errors import LengthConditionError, RepeatedLettersError
from varieties.richardson import (
    MinimalExpression,
    Q_vw,
    bruhat_pairs,
    cube_theorem_check,
    dimension_symmetry,
    edge_count_golden,
    faces_are_subintervals_check,
    inverse_pair_report,
    is_proper,
    is_toric,
    minimal_expression,
    proper_pair_check,
    richardson_complexity,
)


class TestIntervalPolytopes:
    def test_boolean_not_toric(self, p):
        report = cube_theorem_check(p("1324"), p("4231"))
        assert (report["toric"], report["cube"], report["boolean"]) == (False, False, True)
        assert report["consistent"]

    def test_toric_not_boolean(self, p):
        report = cube_theorem_check(p("1324"), p("3412"))
        assert (report["toric"], report["cube"], report["boolean"]) == (True, False, False)

    def test_cube(self, p):
        report = cube_theorem_check(p("1243"), p("3412"))
        assert report["toric"] and report["cube"] and report["boolean"]
        assert report["dim"] == report["ell_diff"] == 3

    def test_complexity(self, p):
        assert richardson_complexity(p("1324"), p("4231")) == 1
        assert richardson_complexity(identity(3), longest(3)) == 1
        assert is_toric(p("1324"), p("3412"))

    def test_schubert_case(self, p):
        assert Q_vw(identity(4), p("3412")).dim == 3

    def test_cube_theorem_on_s4(self):
        assert all(cube_theorem_check(v, w)["consistent"] for v, w in bruhat_pairs(4))

    @pytest.mark.slow
    def test_cube_theorem_on_s5(self):
        assert all(cube_theorem_check(v, w)["consistent"] for v, w in bruhat_pairs(5))

    def test_dimension_symmetry_on_s4(self):
        assert all(dimension_symmetry(v, w) for v, w in bruhat_pairs(4))

    def test_faces_of_the_hexagon(self):
        report = faces_are_subintervals_check(identity(3), longest(3))
        assert not report["holds"]
        assert report["witness"] is not None
        trivial = faces_are_subintervals_check(identity(3), identity(3))
        assert trivial["holds"]

    def test_inverse_pair(self, p):
        report = inverse_pair_report(identity(4), p("2143"))
        assert report["dims"] == [2, 2]
        assert report["combinatorially_equivalent"]

    def test_inverse_endpoints(self, p):
        assert p("35412").inverse == p("45132")
        golden = edge_count_golden()
        assert golden["dims"][0] == golden["dims"][1]
        assert golden["edges"][0] != golden["edges"][1]


class TestMinimalExpressions:
    def test_not_proper(self):
        expression = minimal_expression((1, 3, 8, 2, 4, 7, 6))
        assert expression.format() == "s(3,4)s(1,2)s(8,6)"
        assert not expression.proper

    def test_proper(self):
        expression = minimal_expression((2, 8, 4, 7, 1, 6))
        assert expression.format() == "s(2,1)s(4,4)s(8,6)"
        assert is_proper(expression)

    def test_single_run(self):
        expression = minimal_expression(tuple(range(1, 6)))
        assert expression.factors == ((1, 5),)
        assert expression.proper

    def test_letters_round_trip_to_same_element(self):
        letters = (1, 3, 8, 2, 4, 7, 6)
        expression = minimal_expression(letters)
        assert sorted(expression.letters()) == sorted(letters)
        assert from_word(expression.letters(), 9) == from_word(letters, 9)

    def test_repeated_letters(self):
        with pytest.raises(RepeatedLettersError):
            minimal_expression((1, 2, 1))

    def test_to_dict(self):
        data = MinimalExpression(((2, 1), (4, 4))).to_dict()
        assert data == {
            "factors": [[2, 1], [4, 4]],
            "expression": "s(2,1)s(4,4)",
            "minimal": True,
            "proper": True,
        }


class TestProperPairs:
    def test_left_multiplication(self, p):
        report = proper_pair_check(p("1324"), (2, 3, 1))
        assert report["w"] == "3412"
        assert report["expression"] == "s(2,1)s(3,3)"
        assert not report["proper"]
        assert report["toric"]
        assert not report["cube"]
        assert report["consistent"]

    def test_length_condition(self, p):
        with pytest.raises(LengthConditionError):
            proper_pair_check(p("2134"), (1,))

    def test_proper_gives_cube(self, p):
        report = proper_pair_check(identity(5), (1, 3))
        assert report["proper"]
        assert report["cube"]
