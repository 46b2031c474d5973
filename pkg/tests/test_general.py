import random
from fractions import Fraction

from corpus import atlas_graphs, min_degree_td, order_path_decomposition, random_multigraph, random_multigraphs
from tuttewidth.general import eval_from_counts, general_dp, tutte_coefficients, tutte_polynomial_string
from tuttewidth.graph import Multigraph, trivial_decompositions
from tuttewidth.oracle import brute_counts, brute_tutte

K3 = Multigraph(3, ((0, 1), (1, 2), (0, 2)))
K4 = Multigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def test_k3_table():
    assert general_dp(K3) == {(3, 0): 1, (2, 1): 3, (1, 2): 3, (1, 3): 1}


def test_edgeless_and_loop():
    assert general_dp(Multigraph(5, ())) == {(5, 0): 1}
    assert general_dp(Multigraph(1, ((0, 0),))) == {(1, 0): 1, (1, 1): 1}
    assert general_dp(Multigraph(0, ())) == {(0, 0): 1}


def test_k4_forest_point():
    assert eval_from_counts(general_dp(K4), 2, 1) == 38


def test_k3_values_and_polynomial():
    counts = general_dp(K3)
    assert eval_from_counts(counts, 2, 2) == 8
    assert eval_from_counts(counts, -2, 0) == 2
    assert tutte_polynomial_string(counts) == "x^2 + x + y"


def test_small_polynomials():
    assert tutte_polynomial_string(general_dp(Multigraph(2, ((0, 1),)))) == "x"
    assert tutte_polynomial_string(general_dp(Multigraph(1, ((0, 0),)))) == "y"
    assert tutte_polynomial_string(general_dp(Multigraph(2, ((0, 1), (0, 1))))) == "x + y"
    assert tutte_polynomial_string(general_dp(K4)) == "x^3 + y^3 + 3*x^2 + 4*x*y + 3*y^2 + 2*x + 2*y"


def test_matches_brute_counts_on_corpus():
    for g in atlas_graphs() + random_multigraphs()[:120]:
        assert general_dp(g, min_degree_td(g)) == brute_counts(g)


def test_decomposition_independent():
    rng = random.Random(21)
    for _ in range(40):
        g = random_multigraph(rng)
        order = list(range(g.n))
        rng.shuffle(order)
        trivial = general_dp(g, trivial_decompositions(g)[0])
        assert general_dp(g, min_degree_td(g)) == trivial
        assert general_dp(g, order_path_decomposition(g, order)) == trivial


def test_coefficients_evaluate_like_counts():
    rng = random.Random(22)
    for _ in range(30):
        g = random_multigraph(rng)
        counts = general_dp(g)
        coeffs = tutte_coefficients(counts)
        assert all(c > 0 for c in coeffs.values()) or g.m == 0
        for _ in range(3):
            x, y = Fraction(rng.randint(-6, 6), 5), Fraction(rng.randint(-6, 6), 7)
            poly = sum((c * x ** i * y ** j for (i, j), c in coeffs.items()), Fraction(0))
            assert poly == eval_from_counts(counts, x, y) == brute_tutte(g, x, y)
