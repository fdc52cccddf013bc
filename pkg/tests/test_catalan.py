import pytest

from combinatorics.permutation import Permutation, all_permutations
from combinatorics.trees import (
    Triangulation,
    left_right_trees,
    psi,
    tree_of_triangulation,
    triangulation_of_tree,
    triangulations,
    unordered_canonical,
    wedderburn_etherington,
)
from shared.errors import ParseError
from varieties.catalan import (
    atoms_coatoms_vs_trees,
    balanced_index,
    catalan_fan,
    catalan_forest,
    catalan_pair,
    catalan_rays,
    classification_check,
    dual_bases,
    duality_holds,
    fano_check,
    hat_u,
    normal_fan_bridge,
    normal_fan_bridge_check,
    pair_data,
    pairing,
    primitive_pairs_check,
    psi_triangulation,
    run_permutation,
    tilde_u,
    tree_classes,
    wedderburn_etherington_series,
)

U = Permutation.parse("31687524")

WE_NUMBERS = [1, 1, 1, 2, 3, 6, 11, 23, 46, 98, 207, 451, 983, 2179, 4850]
LEFT_EDGES = [(0, 1), (0, 2), (2, 3), (2, 6), (2, 7), (3, 4), (3, 5), (7, 8)]
RIGHT_EDGES = [(1, 2), (2, 9), (3, 6), (4, 5), (5, 6), (6, 7), (7, 9), (8, 9)]


def varpi(*terms):
    """Signed sum of fundamental weights in an 8-dimensional N."""
    vector = [0] * 8
    for sign, k in terms:
        vector[k - 1] += sign
    return tuple(vector)


def e(i, j=None, n=9):
    """e_i - e_j in Z^n."""
    vector = [0] * n
    vector[i - 1] += 1
    if j is not None:
        vector[j - 1] -= 1
    return tuple(vector)


class TestTriangulations:
    def test_catalan_counts(self):
        assert [len(triangulations(n)) for n in range(1, 6)] == [1, 2, 5, 14, 42]

    def test_crossing_diagonals(self):
        with pytest.raises(ParseError):
            Triangulation(3, frozenset({(0, 2), (1, 3)}))
        with pytest.raises(ParseError):
            Triangulation(3, frozenset({(0, 2)}))

    def test_tree_round_trip(self):
        for triangulation in triangulations(4):
            tree = tree_of_triangulation(triangulation)
            assert tree.in_order() == [1, 2, 3, 4]
            assert triangulation_of_tree(tree) == triangulation

    def test_dict_round_trip(self):
        triangulation = psi_triangulation(U)
        assert Triangulation.from_dict(triangulation.to_dict()) == triangulation


class TestPsi:
    def test_root_is_position_of_minimum(self):
        assert psi(U).label == 2

    def test_left_and_right_trees(self):
        trees = left_right_trees(psi_triangulation(U))
        assert sorted(trees.left_edges) == LEFT_EDGES
        assert sorted(trees.right_edges) == RIGHT_EDGES
        assert trees.root == 2

    def test_hat_and_tilde(self, p):
        assert hat_u(U) == p("142798635")
        assert hat_u(U) * run_permutation(1, 8, 9) == p("427986351")
        assert hat_u(p("2314")) == p("13425")
        assert tilde_u(p("2314")) == p("23145")

    def test_runs(self, p):
        assert run_permutation(1, 3, 4) == p("2341")
        assert run_permutation(3, 1, 4) == p("4123")

    def test_pairs_have_length_difference_n(self):
        for u in all_permutations(4):
            for side in ("head", "tail"):
                v, w = catalan_pair(u, side)
                assert w.length - v.length == 4

    def test_atoms_and_coatoms(self):
        report = atoms_coatoms_vs_trees(U)
        assert report["atoms_match"]
        assert report["coatoms_match"]

    def test_pair_data(self, p):
        data = pair_data(p("2314"))
        assert data["hat_u"] == "13425"
        assert data["tilde_u"] == "23145"


class TestCatalanFans:
    def test_rays(self):
        v, w = catalan_rays(psi_triangulation(U))
        assert v[2] == varpi((1, 3), (-1, 6))
        assert w[6] == varpi((1, 2), (-1, 7))
        assert v[1] == varpi((1, 2))
        assert w[0] == varpi((-1, 1))
        assert v[7] == varpi((1, 8))

    def test_dual_bases(self):
        triangulation = psi_triangulation(U)
        p_basis, q_basis = dual_bases(triangulation)
        assert p_basis[1] == e(1, 3)
        assert q_basis[1] == e(9, 2)
        assert duality_holds(triangulation)

    def test_pairing(self):
        assert pairing((1, 0), (1, -1, 0)) == 1
        assert pairing((0, 1), (1, -1, 0)) == 0

    def test_balanced_index_is_root(self):
        for triangulation in triangulations(4):
            assert balanced_index(triangulation) == left_right_trees(triangulation).root

    def test_smooth_fano(self):
        assert fano_check(3)["holds"]
        for triangulation in triangulations(3):
            assert catalan_fan(triangulation).is_complete()
            assert primitive_pairs_check(triangulation)

    def test_classification(self):
        report = classification_check(3)
        assert report["holds"]
        assert report["classes"] == report["expected_classes"] == 2
        assert classification_check(4)["classes"] == 3

    def test_tree_classes(self):
        classes = tree_classes(3)
        assert sum(len(members) for members in classes.values()) == 5
        assert len(classes) == 2

    def test_forest_has_one_root(self):
        forest = catalan_forest(psi_triangulation(U))
        assert forest.roots() == [2]

    def test_normal_fan_bridge(self, p):
        for u in (p("123"), p("231"), p("312")):
            assert normal_fan_bridge(u, "head")
            assert normal_fan_bridge(u, "tail")
        assert normal_fan_bridge_check(3, samples=3, seed=1)["holds"]

    def test_unordered_shapes(self):
        assert unordered_canonical(psi(Permutation.parse("123"))) == "((()))"


class TestWedderburnEtherington:
    def test_values(self):
        assert wedderburn_etherington(15) == WE_NUMBERS

    def test_generating_function(self):
        report = wedderburn_etherington_series(15)
        assert report["holds"]
        assert report["b"] == WE_NUMBERS
