import pytest

from combinatorics.bruhat import (
    BruhatInterval,
    ReducedWord,
    bruhat_leq,
    covers,
    distinct_letter_word,
    reduced_words,
    shifted_leq,
)
from combinatorics.patterns import avoids_45bar312, contains_pattern, occurrences, standardize
from combinatorics.permutation import (
    Permutation,
    all_permutations,
    compose,
    from_word,
    identity,
    longest,
    simple_reflection,
)
from combinatorics.signed import PARITY_EVEN, SignedPermutation
from shared.errors import IntervalError, ParseError, RankMismatchError


class TestPermutation:
    def test_compose_is_function_composition(self, p):
        assert compose(p("312"), p("231")) == identity(3)
        assert p("312") * p("231") == identity(3)

    def test_identity_is_neutral(self, p):
        w = p("4213")
        assert identity(4) * w == w == w * identity(4)

    def test_word_product(self):
        assert from_word((1, 2, 3, 4), 5) == Permutation.parse("23451")

    def test_lengths(self, p):
        assert p("4213").length == 4
        assert identity(4).length == 0
        assert longest(4).length == 6

    def test_inverse(self, p):
        assert p("35412").inverse == p("45132")
        assert p("35412") * p("35412").inverse == identity(5)

    def test_swap_positions_and_values(self, p):
        u = p("2143")
        assert u.swap_positions(1, 3) == p("4123")
        assert u.swap_values(1, 3) == p("2341")

    def test_parse_formats(self):
        assert Permutation.parse("e@3") == identity(3)
        assert Permutation.parse("w0@4") == longest(4)
        assert Permutation.parse("2, 1, 3") == Permutation((2, 1, 3))
        wide = Permutation.parse("10,1,2,3,4,5,6,7,8,9")
        assert wide.n == 10
        assert wide.format() == "10,1,2,3,4,5,6,7,8,9"

    def test_parse_rejects_non_permutations(self):
        with pytest.raises(ParseError):
            Permutation.parse("1224")
        with pytest.raises(ParseError):
            Permutation.parse("12a")

    def test_rank_mismatch(self, p):
        with pytest.raises(RankMismatchError):
            compose(p("123"), p("1234"))

    def test_simple_reflection_range(self):
        assert simple_reflection(2, 4) == Permutation.parse("1324")
        with pytest.raises(ParseError):
            simple_reflection(4, 4)

    def test_descents(self, p):
        assert p("3142").right_descents() == [1, 3]
        assert p("3142").left_descents() == [2]
        assert p("1243").ascents() == 2


class TestBruhat:
    def test_incomparable_pair(self, p):
        assert not bruhat_leq(p("213"), p("132"))
        assert not bruhat_leq(p("132"), p("213"))

    def test_identity_is_minimum(self):
        assert all(bruhat_leq(identity(4), w) for w in all_permutations(4))

    def test_comparable_pair(self, p):
        assert bruhat_leq(p("1324"), p("4231"))

    def test_covers(self, p):
        assert covers(identity(3), p("213"))
        assert not covers(identity(3), p("231"))

    def test_interval_size_and_rank(self, p):
        interval = BruhatInterval(p("1324"), p("3412"))
        assert len(interval) == 10
        assert interval.rank == 3

    def test_interval_needs_comparable_endpoints(self, p):
        with pytest.raises(IntervalError):
            BruhatInterval(p("213"), p("132"))

    def test_atoms_and_coatoms_of_long_interval(self, p):
        v, w = p("142798635"), p("427986351")
        interval = BruhatInterval(v, w)
        atom_pairs = [(1, 2), (1, 3), (3, 4), (4, 5), (4, 6), (3, 7), (3, 8), (8, 9)]
        coatom_pairs = [(1, 2), (2, 9), (3, 6), (4, 5), (5, 6), (6, 7), (7, 9), (8, 9)]
        assert interval.atoms == {v.swap_positions(i, j) for i, j in atom_pairs}
        assert interval.coatoms == {w.swap_positions(i, j) for i, j in coatom_pairs}

    def test_boolean_intervals(self, p):
        assert BruhatInterval(p("1324"), p("4231")).is_boolean()
        assert not BruhatInterval(p("1324"), p("3412")).is_boolean()
        assert BruhatInterval(identity(2), p("21")).is_boolean()

    def test_shifted_order(self, p):
        assert shifted_leq(p("231"), p("213"), p("123"))
        u = p("2413")
        assert all(shifted_leq(u, u, x) for x in all_permutations(4))


class TestReducedWords:
    def test_longest_of_s3(self):
        words = {w.letters for w in reduced_words(longest(3))}
        assert words == {(1, 2, 1), (2, 1, 2)}

    def test_identity_has_empty_word(self):
        assert [w.letters for w in reduced_words(identity(4))] == [()]

    def test_commuting_letters(self):
        w = from_word((1, 3, 2, 4), 5)
        words = reduced_words(w)
        assert len(words) == 5
        assert all(word.product(5) == w for word in words)

    def test_distinct_letter_word(self, p):
        assert distinct_letter_word(p("3142")).letters == (2, 1, 3)
        assert distinct_letter_word(longest(3)) is None

    def test_parse_and_format(self):
        assert ReducedWord.parse("s1 s3 s2").letters == (1, 3, 2)
        assert ReducedWord.parse("1,3,2").letters == (1, 3, 2)
        assert str(ReducedWord((2, 1))) == "s2 s1"
        assert str(ReducedWord(())) == "e"


class TestPatterns:
    def test_counts(self, p):
        assert contains_pattern(p("3412"), "3412") == 1
        assert contains_pattern(p("3412"), "321") == 0
        assert contains_pattern(p("3142"), "321") == 0
        assert contains_pattern(identity(3), "21") == 0

    def test_occurrence_positions(self, p):
        assert list(occurrences(p("4231"), "4231")) == [(1, 2, 3, 4)]

    def test_standardize(self):
        assert standardize([7, 2, 9]) == (2, 1, 3)

    def test_barred_pattern(self, p):
        assert avoids_45bar312(p("45312"))
        assert not avoids_45bar312(p("4512"))
        assert avoids_45bar312(identity(5))


class TestSigned:
    def test_parse_bars(self):
        u = SignedPermutation.parse("-23-14")
        assert u.images == (-2, 3, -1, 4)
        assert u.format() == "-23-14"
        assert SignedPermutation.parse("-2,3,-1,4") == u

    def test_alphabet(self):
        u = SignedPermutation.parse("-23-14")
        assert u.alphabet() == [-2, 3, -1, 4, -4, 1, -3, 2]

    def test_negation(self):
        u = SignedPermutation.parse("-23-14")
        assert u(-1) == 2
        assert u(3) == -1

    def test_parity_constraint(self):
        SignedPermutation.parse("-1-23", PARITY_EVEN)
        with pytest.raises(ParseError):
            SignedPermutation.parse("-123", PARITY_EVEN)

    def test_rejects_repeats(self):
        with pytest.raises(ParseError):
            SignedPermutation.parse("1-12")
