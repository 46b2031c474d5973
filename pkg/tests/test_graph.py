import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import full_corpus, min_degree_td, random_multigraph
from tuttewidth.errors import DecompositionError
from tuttewidth.general import general_dp
from tuttewidth.graph import (
    EDGE,
    FORGET,
    INTRODUCE,
    LEAF,
    CutOrder,
    Multigraph,
    TreeDecomposition,
    Violation,
    cut_order_width,
    make_nice,
    path_decomposition,
    trivial_decompositions,
    validate_nice,
    validate_tree_decomposition,
)
from tuttewidth.io import FormatError, format_cut_order, format_gr, format_td, parse_cut_order, parse_gr, parse_td

K3 = Multigraph(3, ((0, 1), (1, 2), (0, 2)))
P4 = Multigraph(4, ((0, 1), (1, 2), (2, 3)))


def test_single_bag_width():
    assert validate_tree_decomposition(K3, TreeDecomposition(({0, 1, 2},))) == 2


def test_uncovered_edge_reported():
    res = validate_tree_decomposition(K3, path_decomposition([{0, 1}, {1, 2}]))
    assert isinstance(res, Violation)
    assert res.axiom == "edge-coverage"
    assert res.witness == (0, 2)


def test_path_bags_width_one():
    assert validate_tree_decomposition(P4, path_decomposition([{0, 1}, {1, 2}, {2, 3}])) == 1


@pytest.mark.parametrize(
    "td, axiom",
    [
        (TreeDecomposition(({0, 1}, {1, 2}, {2, 3}), ((0, 1),)), "tree"),
        (TreeDecomposition(({0, 1}, {1, 2}, {2, 3}), ((0, 1), (1, 2), (0, 2))), "tree"),
        (path_decomposition([{0, 1}, {1, 2}, {2, 4}]), "vertex-range"),
        (path_decomposition([{0, 1}, {1, 2}]), "vertex-coverage"),
        (path_decomposition([{0, 1}, {2, 3}, {1, 2}]), "connectivity"),
        (TreeDecomposition(({0, 1, 2, 3},), declared_width=2), "width"),
    ],
)
def test_violations(td, axiom):
    res = validate_tree_decomposition(P4, td)
    assert isinstance(res, Violation) and res.axiom == axiom


def test_nice_single_vertex():
    g = Multigraph(1, ())
    nd = make_nice(g, TreeDecomposition(({0},)))
    assert [n.kind for n in nd.nodes] == [LEAF, INTRODUCE, FORGET]


def test_nice_k3_three_edge_nodes():
    nd = make_nice(K3, TreeDecomposition(({0, 1, 2},)))
    assert sum(n.kind == EDGE for n in nd.nodes) == 3


def test_nice_doubled_edge():
    g = Multigraph(3, ((0, 1), (0, 1), (1, 2)))
    nd = make_nice(g, trivial_decompositions(g)[0])
    pairs = [g.edges[n.edge] for n in nd.nodes if n.kind == EDGE]
    assert pairs.count((0, 1)) == 2


def test_path_decomposition_has_no_join():
    g = Multigraph(5, ((0, 1), (1, 2), (2, 3), (3, 4), (0, 2)))
    nd = make_nice(g, path_decomposition([{0, 1, 2}, {2, 3}, {3, 4}]))
    assert not nd.has_join()


def test_make_nice_rejects_invalid():
    with pytest.raises(DecompositionError):
        make_nice(K3, path_decomposition([{0, 1}, {1, 2}]))


def test_nice_on_corpus_validates_and_agrees():
    rng = random.Random(3)
    for g in rng.sample(full_corpus(), 60):
        td = min_degree_td(g)
        nd = make_nice(g, td)
        validate_nice(g, nd)
        assert nd.nodes[-1].bag == frozenset()
        assert nd.width == td.width
        assert general_dp(g, td) == general_dp(g, nd)


def test_cut_widths():
    p3 = Multigraph(3, ((0, 1), (1, 2)))
    star = Multigraph(4, ((0, 1), (0, 2), (0, 3)))
    assert cut_order_width(p3, CutOrder((0, 1, 2))) == 1
    assert cut_order_width(star, CutOrder((0, 1, 2, 3))) == 3
    assert cut_order_width(p3, CutOrder((0, 2, 1))) == 2


def test_loops_never_cross():
    g = Multigraph(2, ((0, 0), (0, 1), (1, 1)))
    assert cut_order_width(g, CutOrder((0, 1))) == 1


def test_cut_order_must_be_permutation():
    with pytest.raises(ValueError):
        CutOrder((0, 0, 1))


def test_trivial_decompositions():
    td, co = trivial_decompositions(K3)
    assert td.bags == (frozenset({0, 1, 2}),) and td.width == 2
    assert co.order == (0, 1, 2)
    td, _ = trivial_decompositions(Multigraph(4, ()))
    assert td.width == 0 and len(td.bags) == 4
    rng = random.Random(4)
    for _ in range(30):
        g = random_multigraph(rng)
        td, co = trivial_decompositions(g)
        assert validate_tree_decomposition(g, td) == (g.n - 1 if g.m else 0)
        assert cut_order_width(g, co) >= 0


def test_contract_keeps_parallel_partners_as_loops():
    g = Multigraph(3, ((0, 1), (0, 1), (1, 2)))
    h = g.contract_edge(0)
    assert h.n == 2
    assert sorted(h.edges) == [(0, 0), (0, 1)]


def test_components_rank_nullity():
    g = Multigraph(5, ((0, 1), (1, 2), (2, 0), (3, 3)))
    assert g.components() == 3
    assert g.rank() == 2
    assert g.nullity() == 2


@st.composite
def multigraphs(draw):
    n = draw(st.integers(1, 8))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12))
    return Multigraph(n, tuple(edges))


@given(multigraphs())
@settings(max_examples=60, deadline=None)
def test_gr_round_trip(g):
    assert parse_gr(format_gr(g)) == g


@given(multigraphs(), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_td_and_cut_round_trip(g, rnd):
    td = min_degree_td(g)
    assert parse_td(format_td(td, g.n)) == td
    order = list(range(g.n))
    rnd.shuffle(order)
    co = CutOrder(tuple(order))
    assert parse_cut_order(format_cut_order(co)) == co


@pytest.mark.parametrize(
    "text",
    ["1 2\n", "p tw 2 1\n1 3\n", "p tw 2 2\n1 2\n", "p tw 2 1\n1 x\n", "p tw 2\n"],
)
def test_bad_graph_files(text):
    with pytest.raises(FormatError):
        parse_gr(text)


def test_comments_and_loops_parse():
    g = parse_gr("c a triangle with a loop\np tw 3 4\n1 2\n2 3\n1 3\n2 2\n")
    assert g.edges[-1] == (1, 1)
