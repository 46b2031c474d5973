import random
from fractions import Fraction

import pytest

from corpus import deletion_contraction, random_multigraph
from tuttewidth.errors import ResourceGuardError
from tuttewidth.graph import Multigraph
from tuttewidth.oracle import (
    brute_colorings,
    brute_counts,
    brute_even_subgraphs,
    brute_forest_count,
    brute_tutte,
)

K3 = Multigraph(3, ((0, 1), (1, 2), (0, 2)))
K4 = Multigraph(4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)))


def test_named_values():
    assert brute_tutte(K3, 2, 2) == 8
    assert brute_tutte(K3, 1, 1) == 3
    assert brute_tutte(K4, 2, 1) == 38


def test_counts_examples():
    assert brute_counts(K3) == {(3, 0): 1, (2, 1): 3, (1, 2): 3, (1, 3): 1}
    assert brute_counts(Multigraph(4, ())) == {(4, 0): 1}
    assert brute_counts(Multigraph(1, ((0, 0),))) == {(1, 0): 1, (1, 1): 1}


def test_other_enumerations():
    assert brute_forest_count(K3) == 7
    assert brute_even_subgraphs(K4) == [1, 0, 0, 4, 3, 0, 0]
    assert brute_colorings(K3, 3) == 6


def test_against_deletion_contraction():
    rng = random.Random(11)
    for _ in range(80):
        g = random_multigraph(rng, 6, 9)
        for _ in range(3):
            x = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            y = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            assert brute_tutte(g, x, y) == deletion_contraction(g, x, y)


def test_deletion_contraction_rules_on_brute():
    rng = random.Random(12)
    x, y = Fraction(3, 2), Fraction(-2)
    for _ in range(60):
        g = random_multigraph(rng, 6, 8)
        if not g.m:
            continue
        e = rng.randrange(g.m)
        u, v = g.edges[e]
        deleted = g.delete_edge(e)
        if u == v:
            assert brute_tutte(g, x, y) == y * brute_tutte(deleted, x, y)
        elif deleted.components() > g.components():
            assert brute_tutte(g, x, y) == x * brute_tutte(g.contract_edge(e), x, y)
        else:
            assert brute_tutte(g, x, y) == brute_tutte(deleted, x, y) + brute_tutte(g.contract_edge(e), x, y)


def test_disjoint_union_multiplies():
    rng = random.Random(13)
    for _ in range(20):
        a, b = random_multigraph(rng, 4, 5), random_multigraph(rng, 4, 5)
        for pt in ((2, 3), (-1, Fraction(1, 2))):
            assert brute_tutte(a.disjoint_union(b), *pt) == brute_tutte(a, *pt) * brute_tutte(b, *pt)


def test_special_points():
    rng = random.Random(14)
    for _ in range(30):
        g = random_multigraph(rng, 6, 8)
        assert brute_tutte(g, 2, 2) == 2 ** g.m
        assert 0 <= brute_tutte(g, 1, 2) <= 2 ** g.m


def test_counts_reproduce_values():
    rng = random.Random(15)
    g = random_multigraph(rng, 6, 9)
    counts = brute_counts(g)
    n, k = g.n, g.components()
    for _ in range(20):
        x, y = Fraction(rng.randint(-5, 5), 2), Fraction(rng.randint(-5, 5), 3)
        direct = sum((c * (x - 1) ** (i - k) * (y - 1) ** (i + j - n) for (i, j), c in counts.items()), Fraction(0))
        assert direct == brute_tutte(g, x, y)


def test_guards():
    big = Multigraph(2, ((0, 1),) * 25)
    with pytest.raises(ResourceGuardError):
        brute_counts(big)
    with pytest.raises(ResourceGuardError):
        brute_colorings(Multigraph(30, ()), 3)
