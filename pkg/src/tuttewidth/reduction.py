"""Moving Tutte evaluations along a hyperbola (x-1)(y-1) = alpha.

Replacing every edge by a small gadget shifts the evaluation point along its
hyperbola (tensor product formula). Evaluating the transformed graphs at one
fixed point therefore samples the original graph at many points of the same
curve, and interpolation recovers the whole restriction. Each transform also
rebuilds the supplied decompositions so their widths stay controlled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from tuttewidth.errors import DegenerateGadgetError, InapplicableError, ResourceGuardError
from tuttewidth.forests import count_forests, curve_y1_restriction
from tuttewidth.general import eval_from_counts, general_dp
from tuttewidth.graph import (
    CutOrder,
    DisjointSet,
    Multigraph,
    TreeDecomposition,
    path_decomposition,
    trivial_decompositions,
)
from tuttewidth.oracle import brute_tutte
from tuttewidth.poly import UniPoly, interpolate
from tuttewidth.special import tutte_chromatic_point, tutte_on_H2

STRETCH = "stretch"
THICKEN = "thicken"
INSULATED = "insulated"


@dataclass(frozen=True)
class TransformResult:
    graph: Multigraph
    tree_decomposition: TreeDecomposition
    path_decomposition: TreeDecomposition | None = None
    cut_order: CutOrder | None = None
    provenance: tuple[str, int] = ("identity", 1)


# graph transforms

def _subdivide(g: Multigraph, k: int, bundle: int = 1):
    """Replace each edge by a path of ``k`` edges whose middle edge (k = 3) is ``bundle``-fold.

    Returns the graph and, per original edge, the list of inserted vertices.
    """
    edges = []
    inner: list[list[int]] = []
    nxt = g.n
    for u, v in g.edges:
        ws = list(range(nxt, nxt + k - 1))
        nxt += k - 1
        inner.append(ws)
        path = [u, *ws, v]
        for a, b in zip(path, path[1:]):
            times = bundle if (k == 3 and a == ws[0] and b == ws[1]) else 1
            edges.extend([(a, b)] * times)
    return Multigraph(nxt, tuple(edges)), inner


def _check_k(k: int) -> None:
    if k < 1:
        raise ValueError("k must be at least 1")


def _is_forest_shape(g: Multigraph) -> bool:
    """True iff the underlying simple graph (loops and parallels dropped) is acyclic."""
    ds = DisjointSet(g.n)
    seen = set()
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            continue
        seen.add(key)
        if not ds.union(u, v):
            return False
    return True


def forest_decomposition(g: Multigraph) -> TreeDecomposition:
    """Width-1 tree decomposition of a graph whose underlying simple graph is a forest."""
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    bags: list[tuple[int, ...]] = []
    tree_edges = []
    bag_of: dict[int, int] = {}
    seen = [False] * g.n
    last_root_bag = None
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        root_bag = len(bags)
        bags.append((root,))
        if last_root_bag is not None:
            tree_edges.append((last_root_bag, root_bag))
        last_root_bag = root_bag
        bag_of[root] = root_bag
        stack = [root]
        while stack:
            p = stack.pop()
            for c in sorted(adj[p]):
                if not seen[c]:
                    seen[c] = True
                    bag_of[c] = len(bags)
                    bags.append((p, c))
                    tree_edges.append((bag_of[p], bag_of[c]))
                    stack.append(c)
    return TreeDecomposition(tuple(bags), tuple(tree_edges))


def _first_bag(td: TreeDecomposition, u: int, v: int, count: int) -> int:
    return next(i for i in range(count) if u in td.bags[i] and v in td.bags[i])


def _chain_tree(td: TreeDecomposition, g: Multigraph, inner: list[list[int]]) -> TreeDecomposition:
    """Hang bags {u,v,w1}, {w1,v,w2}, ... off a bag covering each subdivided edge."""
    bags = list(td.bags)
    tree_edges = list(td.tree_edges)
    original = len(bags)
    for (u, v), ws in zip(g.edges, inner):
        if not ws:
            continue
        prev = _first_bag(td, u, v, original)
        left = u
        for w in ws:
            bags.append(frozenset({left, v, w}))
            tree_edges.append((prev, len(bags) - 1))
            prev = len(bags) - 1
            left = w
    return TreeDecomposition(tuple(bags), tuple(tree_edges))


def _chain_path(pd: TreeDecomposition, g: Multigraph, inner: list[list[int]]) -> TreeDecomposition:
    """After the first bag B covering an edge, insert B plus consecutive pairs of its path vertices."""
    seq = [pd.bags[i] for i in pd.path_sequence()]
    extra: list[list[frozenset[int]]] = [[] for _ in seq]
    for (u, v), ws in zip(g.edges, inner):
        if not ws:
            continue
        at = next(i for i, b in enumerate(seq) if u in b and v in b)
        if len(ws) == 1:
            extra[at].append(seq[at] | {ws[0]})
        for a, b in zip(ws, ws[1:]):
            extra[at].append(seq[at] | {a, b})
    out = []
    for bag, more in zip(seq, extra):
        out.append(bag)
        out.extend(more)
    return path_decomposition(out)


def _chain_cut(co: CutOrder, g: Multigraph, inner: list[list[int]]) -> CutOrder:
    """Insert each path's inner vertices right after its earlier endpoint."""
    pos = {v: i for i, v in enumerate(co.order)}
    after: dict[int, list[int]] = {v: [] for v in co.order}
    for (u, v), ws in zip(g.edges, inner):
        if not ws:
            continue
        first, last = (u, v) if pos[u] <= pos[v] else (v, u)
        run = ws if first == u else ws[::-1]
        after[first] = run + after[first]
    order = []
    for v in co.order:
        order.append(v)
        order.extend(after[v])
    return CutOrder(tuple(order))


def _subdivision_result(g, td, pd, co, k, bundle, name, provenance_k) -> TransformResult:
    h, inner = _subdivide(g, k, bundle)
    if td is None:
        td = trivial_decompositions(g)[0]
    if td.width <= 1 and _is_forest_shape(h):
        new_td = forest_decomposition(h)
    else:
        new_td = _chain_tree(td, g, inner)
    return TransformResult(
        h,
        new_td,
        _chain_path(pd, g, inner) if pd is not None else None,
        _chain_cut(co, g, inner) if co is not None else None,
        (name, provenance_k),
    )


def k_stretch(g: Multigraph, k: int, td=None, pd=None, co=None) -> TransformResult:
    """Every edge becomes a path of ``k`` edges; a loop becomes a k-cycle."""
    _check_k(k)
    return _subdivision_result(g, td, pd, co, k, 1, STRETCH, k)


def k_thicken(g: Multigraph, k: int, td=None, pd=None, co=None) -> TransformResult:
    """Every edge becomes ``k`` parallel copies; decompositions carry over unchanged."""
    _check_k(k)
    h = Multigraph(g.n, tuple(e for e in g.edges for _ in range(k)))
    if td is None:
        td = trivial_decompositions(g)[0]
    return TransformResult(h, td, pd, co, (THICKEN, k))


def insulated_k_thicken(g: Multigraph, k: int, td=None, pd=None, co=None) -> TransformResult:
    """Every edge becomes a 3-edge path whose middle edge is ``k``-fold."""
    _check_k(k)
    return _subdivision_result(g, td, pd, co, 3, k, INSULATED, k)


TRANSFORMS = {STRETCH: k_stretch, THICKEN: k_thicken, INSULATED: insulated_k_thicken}


# tensor products

def stretch_gadget(k: int) -> tuple[Multigraph, int]:
    """Cycle on k+1 edges; the special edge is the last one."""
    n = k + 1
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n))), n - 1


def thicken_gadget(k: int) -> tuple[Multigraph, int]:
    """k+1 parallel edges; the special edge is the last one."""
    return Multigraph(2, ((0, 1),) * (k + 1)), k


def insulated_gadget(k: int) -> tuple[Multigraph, int]:
    """0-2, k-fold 2-3, 3-1, plus the special edge 0-1."""
    edges = ((0, 2),) + ((2, 3),) * k + ((3, 1), (0, 1))
    return Multigraph(4, edges), len(edges) - 1


GADGETS = {STRETCH: stretch_gadget, THICKEN: thicken_gadget, INSULATED: insulated_gadget}


def tensor_product(g: Multigraph, h: Multigraph, e: int) -> Multigraph:
    """Replace each edge uv of g by a copy of h minus e, gluing e's ends to u and v."""
    a, b = h.edges[e]
    if a == b:
        raise ValueError("the special edge must not be a loop")
    rest = [ed for i, ed in enumerate(h.edges) if i != e]
    others = [w for w in range(h.n) if w not in (a, b)]
    edges = []
    nxt = g.n
    for u, v in g.edges:
        names = {a: u, b: v}
        for w in others:
            names[w] = nxt
            nxt += 1
        edges.extend((names[p], names[q]) for p, q in rest)
    return Multigraph(nxt, tuple(edges))


@dataclass(frozen=True)
class GadgetFactors:
    t_c: Fraction
    t_l: Fraction
    x: Fraction
    y: Fraction

    def prefactor(self, g: Multigraph) -> Fraction:
        return self.t_c ** g.nullity() * self.t_l ** g.rank()

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return self.x, self.y


def _solve_factors(deleted, contracted, x, y) -> GadgetFactors:
    x, y = Fraction(x), Fraction(y)
    det = (x - 1) * (y - 1) - 1
    if det == 0:
        raise DegenerateGadgetError(f"degenerate gadget at point ({x}, {y}): (x-1)(y-1) = 1")
    t_c = ((y - 1) * deleted - contracted) / det
    t_l = ((x - 1) * contracted - deleted) / det
    if t_c == 0 or t_l == 0:
        raise DegenerateGadgetError(f"degenerate gadget at point ({x}, {y}): zero factor")
    return GadgetFactors(t_c, t_l, deleted / t_l, contracted / t_c)


def brylawski_factors(h: Multigraph, e: int, x, y) -> GadgetFactors:
    """Factors of the tensor product formula for gadget (h, e), by exhaustive evaluation of h."""
    return _solve_factors(brute_tutte(h.delete_edge(e), x, y), brute_tutte(h.contract_edge(e), x, y), x, y)


def gadget_factors(kind: str, k: int, x, y) -> GadgetFactors:
    """Same as :func:`brylawski_factors` for the named gadgets, from closed forms."""
    x, y = Fraction(x), Fraction(y)
    geo_x = sum((x ** i for i in range(1, k)), Fraction(0))
    geo_y = sum((y ** i for i in range(1, k)), Fraction(0))
    if kind == STRETCH:
        deleted, contracted = x ** k, geo_x + y
    elif kind == THICKEN:
        deleted, contracted = x + geo_y, y ** k
    elif kind == INSULATED:
        bundle = x + geo_y
        deleted = x * x * bundle
        contracted = x * bundle + bundle + y ** k
    else:
        raise ValueError(f"unknown gadget {kind!r}")
    return _solve_factors(deleted, contracted, x, y)


# curve restriction

@dataclass(frozen=True)
class PointEvaluator:
    """Computes T(graph; a, b) at one fixed point given a graph and a tree decomposition."""

    point: tuple[Fraction, Fraction]
    fn: Callable[[Multigraph, TreeDecomposition], Fraction]
    name: str = "custom"

    @property
    def alpha(self) -> Fraction:
        a, b = self.point
        return (a - 1) * (b - 1)


def ising_evaluator(x, y) -> PointEvaluator:
    x, y = Fraction(x), Fraction(y)
    return PointEvaluator((x, y), lambda g, td: tutte_on_H2(g, td, x, y), "ising")


def coloring_evaluator(q: int) -> PointEvaluator:
    return PointEvaluator((Fraction(1 - q), Fraction(0)), lambda g, td: tutte_chromatic_point(g, td, q), "coloring")


def general_evaluator(x, y) -> PointEvaluator:
    x, y = Fraction(x), Fraction(y)
    return PointEvaluator((x, y), lambda g, td: eval_from_counts(general_dp(g, td), x, y), "general")


def oracle_evaluator(x, y) -> PointEvaluator:
    x, y = Fraction(x), Fraction(y)
    return PointEvaluator((x, y), lambda g, td: brute_tutte(g, x, y), "oracle")


@dataclass
class _Outer:
    steps: list[tuple[str, int]] = field(default_factory=list)
    factors: list[GadgetFactors] = field(default_factory=list)

    def point(self, start):
        return self.factors[-1].point if self.factors else start


def _good_start(a, b) -> bool:
    return abs(a) not in (0, 1) or a == 1 and b != 1


def _find_outer(a, b, depth: int = 2) -> _Outer:
    """Shortest chain of gadgets moving (a, b) to a point where stretching gives fresh points."""
    if _good_start(a, b):
        return _Outer()
    moves = [(INSULATED, 2), (INSULATED, 3), (THICKEN, 2), (THICKEN, 3), (STRETCH, 2), (STRETCH, 3)]
    for length in range(1, depth + 1):
        for chain in product(moves, repeat=length):
            point = (a, b)
            facs = []
            try:
                for kind, k in chain:
                    f = gadget_factors(kind, k, *point)
                    facs.append(f)
                    point = f.point
            except DegenerateGadgetError:
                continue
            if point[1] != 1 and _good_start(*point):
                return _Outer(list(chain), facs)
    raise DegenerateGadgetError(f"no gadget chain moves ({a}, {b}) off the degenerate values")


def curve_samples(g: Multigraph, evaluator: PointEvaluator, count: int, td=None):
    """``count`` pairs (t, t^|V| T(G; alpha/t + 1, t + 1)) obtained through transformed graphs."""
    a, b = evaluator.point
    alpha = evaluator.alpha
    if alpha == 1:
        raise DegenerateGadgetError("alpha = 1: every gadget is degenerate on this curve")
    if b == 1:
        raise InapplicableError("the evaluator point lies on y = 1; use the forest route")
    if td is None:
        td = trivial_decompositions(g)[0]
    outer = _find_outer(a, b)
    a2, b2 = outer.point((a, b))
    samples = []
    seen = set()
    k = 0
    while len(samples) < count:
        k += 1
        if k > 8 * count + 16:
            raise DegenerateGadgetError("too many degenerate stretch lengths")
        try:
            inner = gadget_factors(STRETCH, k, a2, b2) if k > 1 else None
        except DegenerateGadgetError:
            continue
        t = (inner.y if inner else b2) - 1
        if t == 0 or t in seen:
            continue
        res = k_stretch(g, k, td)
        scale = inner.prefactor(g) if inner else Fraction(1)
        graph, dec = res.graph, res.tree_decomposition
        for (kind, kk), f in zip(reversed(outer.steps), reversed(outer.factors)):
            scale *= f.prefactor(graph)
            step = TRANSFORMS[kind](graph, kk, dec)
            graph, dec = step.graph, step.tree_decomposition
        if scale == 0:
            continue
        value = Fraction(evaluator.fn(graph, dec)) / scale
        seen.add(t)
        samples.append((t, t ** g.n * value))
    return samples


def curve_degree_bound(g: Multigraph) -> int:
    """t^|V| T_alpha(G; t) = sum_A alpha^(k(A)-k(E)) t^(|A|+k(E)), so the degree is at most |E| + k(E)."""
    return g.m + g.components()


def curve_restriction(g: Multigraph, alpha, evaluator: PointEvaluator, td=None) -> UniPoly:
    """t^|V| T(G; alpha/t + 1, t + 1) as an exact polynomial in t.

    One sample beyond the degree bound is held back and must lie on the fit.
    """
    if Fraction(alpha) != evaluator.alpha:
        raise ValueError(f"evaluator point lies on alpha = {evaluator.alpha}, not {alpha}")
    need = curve_degree_bound(g) + 1
    samples = curve_samples(g, evaluator, need + 1, td)
    poly = interpolate(samples[:need])
    t, v = samples[need]
    if poly(t) != v:
        raise ArithmeticError("interpolated curve misses the check sample")
    return poly


def direct_curve(g: Multigraph, alpha, fn: Callable[[Fraction, Fraction], Fraction]) -> UniPoly:
    """Interpolate the same restriction from direct evaluations ``fn(x, y)`` on the curve."""
    alpha = Fraction(alpha)
    need = curve_degree_bound(g) + 1
    samples = []
    t = Fraction(1)
    while len(samples) < need:
        t += 1
        if t + 1 in (1, -1):
            continue
        samples.append((t, t ** g.n * fn(alpha / t + 1, t + 1)))
    return interpolate(samples)


# dispatch

ROUTES = ("closed-form", "forest", "ising", "coloring", "general")

# the colouring curve route runs |E|+k(E)+2 colouring DPs on stretched graphs;
# beyond this table size the general DP is cheaper
COLORING_ROUTE_LIMIT = 1 << 12


def _integer(q: Fraction) -> bool:
    return q.denominator == 1


def choose_route(g: Multigraph, x, y, td: TreeDecomposition | None = None) -> str:
    x, y = Fraction(x), Fraction(y)
    alpha = (x - 1) * (y - 1)
    if alpha == 1:
        return "closed-form"
    if y == 1:
        return "forest"
    if alpha == 2 and y != -1:
        return "ising"
    if _integer(alpha) and alpha >= 3:
        width = (td or trivial_decompositions(g)[0]).width
        if alpha ** (max(width, 2) + 1) <= COLORING_ROUTE_LIMIT:
            return "coloring"
    return "general"


def evaluate_point(g: Multigraph, x, y, td: TreeDecomposition | None = None, route: str | None = None) -> Fraction:
    """T(G; x, y) by the cheapest applicable route (or the one named)."""
    x, y = Fraction(x), Fraction(y)
    route = route or choose_route(g, x, y, td)
    alpha = (x - 1) * (y - 1)
    if route == "closed-form":
        if alpha != 1:
            raise InapplicableError("closed form needs (x-1)(y-1) = 1")
        return y ** g.m * (y - 1) ** (g.components() - g.n)
    if route == "forest":
        if y != 1:
            raise InapplicableError("forest route needs y = 1")
        if x == 1:
            return curve_y1_restriction(g, td)(x)
        return (x - 1) ** g.rank() * Fraction(count_forests(g, td, 1 / (x - 1)))
    if route == "ising":
        return tutte_on_H2(g, td, x, y)
    if route == "coloring":
        if not (_integer(alpha) and alpha >= 2) or y == 1:
            raise InapplicableError("coloring route needs (x-1)(y-1) = q, an integer >= 2, and y != 1")
        q = int(alpha)
        if (x, y) == (1 - q, 0):
            return tutte_chromatic_point(g, td, q)
        try:
            poly = curve_restriction(g, alpha, coloring_evaluator(q), td)
        except ResourceGuardError:
            return eval_from_counts(general_dp(g, td), x, y)
        t = y - 1
        return poly(t) / t ** g.n
    if route == "general":
        return eval_from_counts(general_dp(g, td), x, y)
    raise ValueError(f"unknown route {route!r}")
