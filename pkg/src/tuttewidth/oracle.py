"""Exhaustive ground truth: every edge subset (or every colouring) is enumerated."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product

from tuttewidth.errors import ResourceGuardError
from tuttewidth.graph import DisjointSet, Multigraph

MAX_EDGES = 24
MAX_COLORINGS = 1 << 24


def _guard(g: Multigraph) -> None:
    if g.m > MAX_EDGES:
        raise ResourceGuardError(f"oracle enumerates 2^|E| subsets; |E|={g.m} exceeds {MAX_EDGES}")


@lru_cache(maxsize=512)
def brute_counts(g: Multigraph) -> dict[tuple[int, int], int]:
    """``c[(i, j)]``: number of edge subsets with ``i`` components and ``j`` edges."""
    _guard(g)
    counts: Counter[tuple[int, int]] = Counter()
    for mask in range(1 << g.m):
        ds = DisjointSet(g.n)
        size = 0
        for idx, (u, v) in enumerate(g.edges):
            if mask >> idx & 1:
                ds.union(u, v)
                size += 1
        counts[ds.count, size] += 1
    return dict(counts)


def brute_tutte(g: Multigraph, x, y) -> Fraction:
    """Sum of (x-1)^(k(A)-k(E)) (y-1)^(k(A)+|A|-|V|) over all edge subsets A, with 0^0 = 1."""
    x, y = Fraction(x), Fraction(y)
    counts = brute_counts(g)
    k_e = g.components()
    return sum(
        (c * (x - 1) ** (i - k_e) * (y - 1) ** (i + j - g.n) for (i, j), c in counts.items()),
        Fraction(0),
    )


def brute_forest_count(g: Multigraph) -> int:
    """Number of acyclic edge subsets (loops are cycles)."""
    _guard(g)
    total = 0
    for mask in range(1 << g.m):
        ds = DisjointSet(g.n)
        if all(ds.union(u, v) for idx, (u, v) in enumerate(g.edges) if mask >> idx & 1):
            total += 1
    return total


def brute_even_subgraphs(g: Multigraph) -> list[int]:
    """Coefficients of C_G(z): entry k counts edge sets of size k with all degrees even."""
    _guard(g)
    coeffs = [0] * (g.m + 1)
    for mask in range(1 << g.m):
        parity = 0
        for idx, (u, v) in enumerate(g.edges):
            if mask >> idx & 1:
                parity ^= (1 << u) ^ (1 << v)
        if parity == 0:
            coeffs[bin(mask).count("1")] += 1
    return coeffs


def brute_colorings(g: Multigraph, q: int) -> int:
    """Number of maps V -> {0..q-1} with distinct colours on every edge's ends."""
    if q ** g.n > MAX_COLORINGS:
        raise ResourceGuardError(f"q^|V| = {q}^{g.n} colourings exceed the oracle guard")
    return sum(
        all(col[u] != col[v] for u, v in g.edges)
        for col in product(range(q), repeat=g.n)
    )
