"""Tutte values on two special families of points.

Along the hyperbola (x-1)(y-1) = 2 the Tutte polynomial is an Ising
partition function, which is read off the generating function of even edge
sets. At (1-q, 0) it is a rescaled count of proper q-colourings.
"""

from __future__ import annotations

from fractions import Fraction

from tuttewidth.errors import InapplicableError, ResourceGuardError
from tuttewidth.graph import EDGE, FORGET, INTRODUCE, JOIN, LEAF, Multigraph, NiceDecomposition, TreeDecomposition, as_nice
from tuttewidth.poly import UniPoly

MAX_COLOR_TABLE = 1 << 22

Poly = list  # coefficient list, lowest degree first


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] += c
    return out


def _psub(a: Poly, b: Poly) -> Poly:
    return _padd(a, [-c for c in b])


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return out


def _insert_bit(mask: int, at: int) -> int:
    low = mask & ((1 << at) - 1)
    return ((mask >> at) << (at + 1)) | low


def _remove_bit(mask: int, at: int) -> int:
    low = mask & ((1 << at) - 1)
    return ((mask >> (at + 1)) << at) | low


def walsh_hadamard(vec: list[Poly]) -> list[Poly]:
    """Unnormalised transform over Z_2^b; applying it twice scales by 2^b."""
    vec = list(vec)
    h = 1
    while h < len(vec):
        for start in range(0, len(vec), 2 * h):
            for i in range(start, start + h):
                a, b = vec[i], vec[i + h]
                vec[i], vec[i + h] = _padd(a, b), _psub(a, b)
        h *= 2
    return vec


def xor_join(left: dict[int, Poly], right: dict[int, Poly], size: int) -> dict[int, Poly]:
    """XOR convolution of two parity tables on a bag of ``size`` vertices."""
    full = 1 << size
    fl = walsh_hadamard([left.get(p, []) for p in range(full)])
    fr = walsh_hadamard([right.get(p, []) for p in range(full)])
    back = walsh_hadamard([_pmul(a, b) for a, b in zip(fl, fr)])
    out = {}
    for p, poly in enumerate(back):
        exact = []
        for c in poly:
            q, r = divmod(c, full)
            assert r == 0, "inverse transform must divide exactly"
            exact.append(q)
        while exact and exact[-1] == 0:
            exact.pop()
        if exact:
            out[p] = exact
    return out


def naive_xor_join(left: dict[int, Poly], right: dict[int, Poly]) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for pa, a in left.items():
        for pb, b in right.items():
            key = pa ^ pb
            out[key] = _padd(out.get(key, []), _pmul(a, b))
    return out


def even_subgraph_poly(
    g: Multigraph,
    dec: TreeDecomposition | NiceDecomposition | None = None,
    join=None,
) -> UniPoly:
    """C_G(z) = sum over edge sets with all degrees even of z^|A|.

    Tables map a parity mask over the sorted bag to a polynomial in z.
    ``join`` overrides the join handler (takes left, right, bag size).
    """
    nd = as_nice(g, dec)
    join = join or xor_join
    tables: dict[int, dict[int, Poly]] = {}
    for idx, node in enumerate(nd.nodes):
        kids = [tables.pop(c) for c in node.children]
        bag = sorted(node.bag)
        if node.kind == LEAF:
            tab = {0: [1]}
        elif node.kind == INTRODUCE:
            at = bag.index(node.vertex)
            tab = {_insert_bit(p, at): poly for p, poly in kids[0].items()}
        elif node.kind == FORGET:
            at = sorted(node.bag | {node.vertex}).index(node.vertex)
            # an odd forgotten vertex can never be repaired
            tab = {_remove_bit(p, at): poly for p, poly in kids[0].items() if not p >> at & 1}
        elif node.kind == EDGE:
            u, v = g.edges[node.edge]
            flip = (1 << bag.index(u)) ^ (1 << bag.index(v))
            tab = {}
            for p, poly in kids[0].items():
                tab[p] = _padd(tab.get(p, []), poly)
                tab[p ^ flip] = _padd(tab.get(p ^ flip, []), [0] + poly)
        elif node.kind == JOIN:
            tab = join(kids[0], kids[1], len(bag))
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        tables[idx] = tab
    return UniPoly(tables[nd.root].get(0, []))


def tutte_on_H2(g: Multigraph, dec, x, y) -> Fraction:
    """T(G; x, y) for (x-1)(y-1) = 2 through the even-subgraph polynomial.

    With v = y - 1 the random-cluster sum Z = sum_A 2^k(A) v^|A| equals
    (x-1)^k(E) v^|V| T. Writing 1 + v[s=s'] = (1 + v/2)(1 + w s s') with
    w = v/(v+2) and summing over spins gives the high-temperature form
    Z = ((v+2)/2)^|E| 2^|V| C_G(w).
    """
    x, y = Fraction(x), Fraction(y)
    if (x - 1) * (y - 1) != 2:
        raise InapplicableError(f"({x}, {y}) is not on (x-1)(y-1) = 2")
    if y in (1, -1):
        raise InapplicableError("y = 1 or y = -1 is degenerate for the Ising route")
    v = y - 1
    cg = even_subgraph_poly(g, dec)
    z = ((v + 2) / 2) ** g.m * 2 ** g.n * cg(v / (v + 2))
    return z / ((x - 1) ** g.components() * v ** g.n)


def count_colorings(g: Multigraph, dec: TreeDecomposition | NiceDecomposition | None, q: int) -> int:
    """Number of proper colourings with ``q`` colours (loops admit none)."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    nd = as_nice(g, dec)
    if q > 1 and q ** (nd.width + 1) > MAX_COLOR_TABLE:
        raise ResourceGuardError(f"colouring table q^(width+1) = {q}^{nd.width + 1} too large")
    tables: dict[int, dict[tuple, int]] = {}
    for idx, node in enumerate(nd.nodes):
        kids = [tables.pop(c) for c in node.children]
        bag = sorted(node.bag)
        if node.kind == LEAF:
            tab = {(): 1}
        elif node.kind == INTRODUCE:
            at = bag.index(node.vertex)
            tab = {col[:at] + (c,) + col[at:]: n for col, n in kids[0].items() for c in range(q)}
        elif node.kind == FORGET:
            at = sorted(node.bag | {node.vertex}).index(node.vertex)
            tab = {}
            for col, n in kids[0].items():
                key = col[:at] + col[at + 1:]
                tab[key] = tab.get(key, 0) + n
        elif node.kind == EDGE:
            u, v = g.edges[node.edge]
            pu, pv = bag.index(u), bag.index(v)
            tab = {col: n for col, n in kids[0].items() if col[pu] != col[pv]}
        elif node.kind == JOIN:
            left, right = kids
            tab = {col: n * right[col] for col, n in left.items() if col in right}
        else:
            raise ValueError(f"unknown node kind {node.kind!r}")
        tables[idx] = tab
    return tables[nd.root].get((), 0)


def tutte_chromatic_point(g: Multigraph, dec, q: int) -> Fraction:
    """T(G; 1-q, 0) from P(G; q) = (-1)^(|V|-k(E)) q^k(E) T(G; 1-q, 0)."""
    if q < 1:
        raise InapplicableError("the colouring route needs q >= 1")
    k = g.components()
    return Fraction(count_colorings(g, dec, q) * (-1) ** (g.n - k), q ** k)
