"""Counting (weighted) forests with rows reduced to non-crossing partitions.

A row stores its own bag order and maps positional partitions that are
non-crossing on that order to exact weights. Rows represent the true table
of forest counts only up to multiplication by the forest compatibility
matrix, which is all later nodes can observe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from tuttewidth.graph import EDGE, FORGET, INTRODUCE, JOIN, LEAF, Multigraph, NiceDecomposition, NiceNode, TreeDecomposition, as_nice
from tuttewidth.partitions import (
    Partition,
    _bubble_schedule,
    canon_rgs,
    catalan,
    from_rgs,
    join,
    join_rgs,
    partition,
    reduce_to_natural,
    restrict,
    rgs_blocks,
    rgs_noncrossing,
    swap_vector,
)
from tuttewidth.poly import UniPoly, interpolate


@dataclass
class ReducedRow:
    order: tuple[int, ...]
    entries: dict[tuple[int, ...], object]

    def labelled(self) -> dict[Partition, object]:
        return {from_rgs(r, self.order): v for r, v in self.entries.items()}

    @property
    def support(self) -> int:
        return len(self.entries)


def _swap(row: ReducedRow, k: int) -> ReducedRow:
    order = list(row.order)
    order[k], order[k + 1] = order[k + 1], order[k]
    return ReducedRow(tuple(order), swap_vector(row.entries, k))


def _make_adjacent(row: ReducedRow, u: int, v: int) -> ReducedRow:
    pu, pv = row.order.index(u), row.order.index(v)
    while pv > pu + 1:
        row = _swap(row, pv - 1)
        pv -= 1
    while pv < pu - 1:
        row = _swap(row, pv)
        pv += 1
    return row


def normalize(row: ReducedRow) -> ReducedRow:
    """Re-reduce ``row`` onto the sorted order of its bag."""
    slots = [sorted(row.order).index(v) for v in row.order]
    for k in _bubble_schedule(slots):
        row = _swap(row, k)
    return row


def _introduce(row: ReducedRow, v: int) -> ReducedRow:
    return ReducedRow(row.order + (v,), {r + (rgs_blocks(r),): val for r, val in row.entries.items()})


def _forget(row: ReducedRow, v: int) -> ReducedRow:
    at = row.order.index(v)
    out: dict[tuple[int, ...], object] = {}
    for r, val in row.entries.items():
        key = canon_rgs(r[:at] + r[at + 1:])
        out[key] = out.get(key, 0) + val
    return ReducedRow(row.order[:at] + row.order[at + 1:], {k: x for k, x in out.items() if x != 0})


def _add_edge(row: ReducedRow, u: int, v: int, weight) -> ReducedRow:
    row = _make_adjacent(row, u, v)
    pu, pv = row.order.index(u), row.order.index(v)
    out = dict(row.entries)
    for r, val in row.entries.items():
        a, b = r[pu], r[pv]
        if a != b:
            key = canon_rgs(a if x == b else x for x in r)
            out[key] = out.get(key, 0) + weight * val
    return ReducedRow(row.order, {k: x for k, x in out.items() if x != 0})


def _join(left: ReducedRow, right: ReducedRow) -> ReducedRow:
    left, right = normalize(left), normalize(right)
    raw: dict[tuple[int, ...], object] = {}
    for ra, va in left.entries.items():
        for rb, vb in right.entries.items():
            key, excess = join_rgs(ra, rb)
            if excess == 0:
                raw[key] = raw.get(key, 0) + va * vb
    out: dict[tuple[int, ...], object] = {}
    for r, val in raw.items():
        for key, c in reduce_to_natural(r):
            out[key] = out.get(key, 0) + c * val
    return ReducedRow(left.order, {k: x for k, x in out.items() if x != 0})


Observer = Callable[[int, NiceNode, ReducedRow], None]


def count_forests(
    g: Multigraph,
    dec: TreeDecomposition | NiceDecomposition | None = None,
    edge_weight=1,
    observer: Observer | None = None,
):
    """Sum of ``edge_weight ** |A|`` over all acyclic edge sets A.

    With the default weight this is the number of forests, T(G; 2, 1).
    ``observer`` is called with every node's reduced row.
    """
    nd = as_nice(g, dec)
    rows: dict[int, ReducedRow] = {}
    for idx, node in enumerate(nd.nodes):
        kids = [rows.pop(c) for c in node.children]
        if node.kind == LEAF:
            row = ReducedRow((), {(): 1})
        elif node.kind == INTRODUCE:
            row = _introduce(kids[0], node.vertex)
        elif node.kind == FORGET:
            row = _forget(kids[0], node.vertex)
        elif node.kind == EDGE:
            u, v = g.edges[node.edge]
            row = kids[0] if u == v else _add_edge(kids[0], u, v, edge_weight)
        elif node.kind == JOIN:
            row = _join(*kids)
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        bound = catalan(len(row.order))
        if row.support > bound:
            raise RuntimeError(
                f"node {idx} ({node.kind}): reduced row has support {row.support} "
                f"> Catalan({len(row.order)}) = {bound}; order {row.order}"
            )
        if observer is not None:
            observer(idx, node, row)
        rows[idx] = row
    return rows[nd.root].entries.get((), 0)


def check_reduced(row: ReducedRow) -> bool:
    """True iff every supported partition is non-crossing on the row's order."""
    return all(rgs_noncrossing(r) for r in row.entries)


def curve_y1_restriction(g: Multigraph, dec: TreeDecomposition | NiceDecomposition | None = None) -> UniPoly:
    """T(G; x, 1) as a polynomial in x.

    The weighted forest polynomial F(w) = sum_A w^|A| has degree at most
    r = |V| - k(E); it is interpolated from weighted runs and reversed, since
    T(G; x, 1) = sum_j f_j (x-1)^(r-j). One surplus sample checks the fit.
    """
    nd = as_nice(g, dec)
    r = g.rank()
    samples = [(w, count_forests(g, nd, Fraction(w))) for w in range(1, r + 3)]
    forest_poly = interpolate(samples)
    if forest_poly.degree > r:
        raise ArithmeticError(f"forest polynomial has degree {forest_poly.degree} > rank {r}")
    f = forest_poly.dense() + [Fraction(0)] * (r + 1)
    total = UniPoly()
    shift = UniPoly([-1, 1])
    for j in range(r + 1):
        if f[j]:
            term = UniPoly([f[j]])
            for _ in range(r - j):
                term = term * shift
            total = total + term
    return total


def unreduced_forest_tables(g: Multigraph, dec: TreeDecomposition | NiceDecomposition | None = None, observer=None) -> int:
    """Reference DP over all partitions of each bag (no reduction), labelled.

    ``observer(idx, node, table)`` receives the exact table ``tau_x``.
    Intended for tests on small bags.
    """
    nd = as_nice(g, dec)
    tables: dict[int, dict[Partition, int]] = {}
    for idx, node in enumerate(nd.nodes):
        kids = [tables.pop(c) for c in node.children]
        if node.kind == LEAF:
            tab = {(): 1}
        elif node.kind == INTRODUCE:
            tab = {partition(pi + ((node.vertex,),)): val for pi, val in kids[0].items()}
        elif node.kind == FORGET:
            tab = {}
            for pi, val in kids[0].items():
                key = restrict(pi, node.bag)
                tab[key] = tab.get(key, 0) + val
        elif node.kind == EDGE:
            u, v = g.edges[node.edge]
            tab = dict(kids[0])
            if u != v:
                for pi, val in kids[0].items():
                    bu = next(b for b in pi if u in b)
                    if v not in bu:
                        key = join(pi, partition([[u, v]]))
                        tab[key] = tab.get(key, 0) + val
        elif node.kind == JOIN:
            tab = {}
            for pa, va in kids[0].items():
                for pb, vb in kids[1].items():
                    key = join(pa, pb)
                    if len(node.bag) - len(pa) - len(pb) + len(key) == 0:
                        tab[key] = tab.get(key, 0) + va * vb
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        if observer is not None:
            observer(idx, node, tab)
        tables[idx] = tab
    return tables[nd.root].get((), 0)
