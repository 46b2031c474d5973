"""Edge-subset counts by components and size over a nice tree decomposition.

For every node the table maps a positional partition of the (sorted) bag to
the generating function ``sum C(pi, i, j) X^i Y^j``, where ``i`` counts the
components of the introduced vertices and ``j`` the chosen edges. Each
generating function is packed into one Python integer (Kronecker
substitution): coefficient ``(i, j)`` lives at bit offset
``width * (i * (m + 1) + j)``. Counts never exceed ``2^m``, so
``width = m + 2`` bits keep slots from overlapping and shifts implement the
index updates.
"""

from __future__ import annotations

from bisect import bisect_left
from fractions import Fraction

from tuttewidth.graph import EDGE, FORGET, INTRODUCE, JOIN, LEAF, Multigraph, NiceDecomposition, TreeDecomposition, as_nice
from tuttewidth.partitions import canon_rgs, join_rgs, rgs_blocks
from tuttewidth.poly import format_bivariate, shifted_to_monomial


def general_dp(g: Multigraph, dec: TreeDecomposition | NiceDecomposition | None = None) -> dict[tuple[int, int], int]:
    """``c[(i, j)]``: number of edge subsets with ``i`` components and ``j`` edges."""
    nd = as_nice(g, dec)
    width = g.m + 2
    row = width * (g.m + 1)
    tables: dict[int, dict[tuple, int]] = {}
    for idx, node in enumerate(nd.nodes):
        kids = [tables.pop(c) for c in node.children]
        bag = sorted(node.bag)
        if node.kind == LEAF:
            tab = {(): 1}
        elif node.kind == INTRODUCE:
            at = bisect_left(bag, node.vertex)
            tab = {}
            for rgs, packed in kids[0].items():
                key = canon_rgs(rgs[:at] + (-1,) + rgs[at:])
                tab[key] = packed << row
        elif node.kind == FORGET:
            child_bag = sorted(node.bag | {node.vertex})
            at = child_bag.index(node.vertex)
            tab = {}
            for rgs, packed in kids[0].items():
                key = canon_rgs(rgs[:at] + rgs[at + 1:])
                tab[key] = tab.get(key, 0) + packed
        elif node.kind == EDGE:
            u, v = g.edges[node.edge]
            tab = dict(kids[0])
            if u == v:
                for rgs, packed in kids[0].items():
                    tab[rgs] += packed << width
            else:
                pu, pv = bag.index(u), bag.index(v)
                for rgs, packed in kids[0].items():
                    a, b = rgs[pu], rgs[pv]
                    if a == b:
                        tab[rgs] += packed << width
                    else:
                        key = canon_rgs(a if x == b else x for x in rgs)
                        tab[key] = tab.get(key, 0) + ((packed << width) >> row)
        elif node.kind == JOIN:
            tab = {}
            left, right = kids
            for ra, pa in left.items():
                for rb, pb in right.items():
                    key, _ = join_rgs(ra, rb)
                    lost = rgs_blocks(ra) + rgs_blocks(rb) - rgs_blocks(key)
                    tab[key] = tab.get(key, 0) + ((pa * pb) >> (lost * row))
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        tables[idx] = tab
    packed = tables[nd.root].get((), 0)
    mask = (1 << width) - 1
    counts = {}
    for i in range(g.n + 1):
        for j in range(g.m + 1):
            c = (packed >> (width * (i * (g.m + 1) + j))) & mask
            if c:
                counts[i, j] = c
    return counts


def _shape(counts: dict[tuple[int, int], int]) -> tuple[int, int]:
    """(|V|, k(E)) read off the table: the empty set has |V| components, E has the fewest."""
    comps = [i for i, _ in counts]
    return max(comps), min(comps)


def eval_from_counts(counts: dict[tuple[int, int], int], x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    n, k_e = _shape(counts)
    return sum(
        (c * (x - 1) ** (i - k_e) * (y - 1) ** (i + j - n) for (i, j), c in counts.items()),
        Fraction(0),
    )


def tutte_coefficients(counts: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    """Monomial coefficients ``{(p, q): t_pq}`` of T(G; x, y)."""
    n, k_e = _shape(counts)
    shifted: dict[tuple[int, int], int] = {}
    for (i, j), c in counts.items():
        key = (i - k_e, i + j - n)
        shifted[key] = shifted.get(key, 0) + c
    return shifted_to_monomial(shifted)


def tutte_polynomial_string(counts: dict[tuple[int, int], int]) -> str:
    return format_bivariate(tutte_coefficients(counts))
