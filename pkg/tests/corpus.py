"""Shared graph corpora and reference helpers for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree

from tuttewidth.graph import CutOrder, Multigraph, TreeDecomposition, path_decomposition


def from_nx(G) -> Multigraph:
    index = {v: i for i, v in enumerate(sorted(G.nodes))}
    return Multigraph(len(index), tuple((index[u], index[v]) for u, v in G.edges))


@lru_cache(maxsize=None)
def atlas_graphs(max_n: int = 5) -> tuple[Multigraph, ...]:
    """All connected simple graphs on 1..max_n vertices, up to isomorphism."""
    out = []
    for G in nx.graph_atlas_g():
        if 1 <= G.number_of_nodes() <= max_n and nx.is_connected(G):
            out.append(from_nx(G))
    return tuple(out)


def random_multigraph(rng: random.Random, max_n: int = 7, max_m: int = 10) -> Multigraph:
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    return Multigraph(n, tuple((rng.randrange(n), rng.randrange(n)) for _ in range(m)))


@lru_cache(maxsize=None)
def random_multigraphs(count: int = 200, seed: int = 20240611) -> tuple[Multigraph, ...]:
    rng = random.Random(seed)
    return tuple(random_multigraph(rng) for _ in range(count))


def full_corpus() -> tuple[Multigraph, ...]:
    return atlas_graphs() + random_multigraphs()


def random_simple_graph(rng: random.Random, n: int, p: float) -> Multigraph:
    return Multigraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def min_degree_td(g: Multigraph) -> TreeDecomposition:
    """Tree decomposition from networkx's min-degree heuristic (an independent source)."""
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((u, v) for u, v in g.edges if u != v)
    _, tree = treewidth_min_degree(G)
    bags = list(tree.nodes)
    index = {b: i for i, b in enumerate(bags)}
    return TreeDecomposition(tuple(bags), tuple((index[a], index[b]) for a, b in tree.edges))


def order_path_decomposition(g: Multigraph, order) -> TreeDecomposition:
    """Vertex-separation path decomposition of ``order``: bag i holds v_i and every
    earlier vertex with a neighbour at position >= i."""
    pos = {v: i for i, v in enumerate(order)}
    last = {v: pos[v] for v in order}
    for u, v in g.edges:
        last[u] = max(last[u], pos[v])
        last[v] = max(last[v], pos[u])
    bags = [[w for w in order[: i + 1] if last[w] >= i] for i in range(len(order))]
    return path_decomposition(bags or [[]])


def partial_path(rng: random.Random, n: int, w: int, p: float):
    """Random partial w-path with its natural width-w path decomposition."""
    edges = tuple((i, j) for i in range(n) for j in range(i + 1, min(n, i + w + 1)) if rng.random() < p)
    bags = [range(i, min(n, i + w + 1)) for i in range(max(1, n - w))]
    return Multigraph(n, edges), path_decomposition(bags)


def deletion_contraction(g: Multigraph, x, y) -> Fraction:
    """T(G; x, y) by the recursive deletion-contraction rules (independent of subset enumeration)."""
    x, y = Fraction(x), Fraction(y)
    return _dc(g, x, y)


@lru_cache(maxsize=None)
def _dc(g: Multigraph, x: Fraction, y: Fraction) -> Fraction:
    if g.m == 0:
        return Fraction(1)
    u, v = g.edges[-1]
    if u == v:
        return y * _dc(g.delete_edge(g.m - 1), x, y)
    deleted = g.delete_edge(g.m - 1)
    if deleted.components() > g.components():
        return x * _dc(g.contract_edge(g.m - 1), x, y)
    return _dc(deleted, x, y) + _dc(g.contract_edge(g.m - 1), x, y)


def cut_identity(g: Multigraph) -> CutOrder:
    return CutOrder(tuple(range(g.n)))
