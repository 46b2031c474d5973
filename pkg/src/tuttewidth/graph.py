"""Multigraphs, tree/path decompositions, nice decompositions and cut orders."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from tuttewidth.errors import DecompositionError

Edge = tuple[int, int]


class DisjointSet:
    """Union-find over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; False if they were already one set."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``0..n-1``.

    Parallel edges and self-loops are allowed; the position of an edge in
    ``edges`` is its stable index.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def components(self) -> int:
        """Number of connected components k(E)."""
        ds = DisjointSet(self.n)
        for u, v in self.edges:
            ds.union(u, v)
        return ds.count

    def rank(self) -> int:
        return self.n - self.components()

    def nullity(self) -> int:
        return self.m - self.rank()

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (min(u, v), max(u, v))
            if u == v or key in seen:
                return False
            seen.add(key)
        return True

    def delete_edge(self, index: int) -> Multigraph:
        return Multigraph(self.n, self.edges[:index] + self.edges[index + 1:])

    def contract_edge(self, index: int) -> Multigraph:
        """Contract edge ``index``; parallel partners become loops.

        Contracting a loop is the same as deleting it.
        """
        u, v = self.edges[index]
        rest = self.edges[:index] + self.edges[index + 1:]
        if u == v:
            return Multigraph(self.n, rest)
        keep, gone = min(u, v), max(u, v)

        def relabel(w: int) -> int:
            if w == gone:
                w = keep
            return w - 1 if w > gone else w

        return Multigraph(self.n - 1, tuple((relabel(a), relabel(b)) for a, b in rest))

    def disjoint_union(self, other: Multigraph) -> Multigraph:
        shift = self.n
        return Multigraph(
            self.n + other.n,
            self.edges + tuple((u + shift, v + shift) for u, v in other.edges),
        )


@dataclass(frozen=True)
class Violation:
    """Why a tree decomposition is invalid, with a witness."""

    axiom: str
    witness: object
    message: str

    def __str__(self) -> str:
        return f"{self.axiom}: {self.message}"


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed ``0..len(bags)-1`` joined by ``tree_edges``.

    A path decomposition is a tree decomposition whose tree is a path.
    ``declared_width`` defaults to the true width.
    """

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...] = ()
    declared_width: int = -1

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in self.tree_edges))
        if self.declared_width < 0:
            object.__setattr__(self, "declared_width", self.width)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def is_path(self) -> bool:
        return all(len(nbrs) <= 2 for nbrs in self.adjacency()) and self._is_tree()

    def path_sequence(self) -> list[int]:
        """Node indices along the path, starting from the lower-indexed end."""
        if not self.is_path():
            raise DecompositionError("decomposition tree is not a path")
        if len(self.bags) == 1:
            return [0]
        adj = self.adjacency()
        start = min(i for i, nbrs in enumerate(adj) if len(nbrs) <= 1)
        seq, prev = [start], -1
        while len(seq) < len(self.bags):
            nxt = next(w for w in adj[seq[-1]] if w != prev)
            prev = seq[-1]
            seq.append(nxt)
        return seq

    def _is_tree(self) -> bool:
        k = len(self.bags)
        if k == 0 or len(self.tree_edges) != k - 1:
            return False
        ds = DisjointSet(k)
        for a, b in self.tree_edges:
            if not (0 <= a < k and 0 <= b < k) or not ds.union(a, b):
                return False
        return ds.count == 1


def path_decomposition(bags: Sequence[Iterable[int]]) -> TreeDecomposition:
    """Path decomposition with the bags in the given order."""
    bags = tuple(frozenset(b) for b in bags)
    return TreeDecomposition(bags, tuple((i, i + 1) for i in range(len(bags) - 1)))


def validate_tree_decomposition(g: Multigraph, td: TreeDecomposition) -> int | Violation:
    """Width of ``td`` if it is a tree decomposition of ``g``, else a Violation."""
    if not td._is_tree():
        return Violation("tree", td.tree_edges, "bag graph is not a tree")
    occurs: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                return Violation("vertex-range", (i, v), f"bag {i} holds unknown vertex {v}")
            occurs[v].append(i)
    for v in range(g.n):
        if not occurs[v]:
            return Violation("vertex-coverage", v, f"vertex {v} is in no bag")
    for idx, (u, v) in enumerate(g.edges):
        if not any(u in td.bags[i] for i in occurs[v]):
            return Violation("edge-coverage", (u, v), f"edge {idx} ({u}, {v}) is in no bag")
    adj = td.adjacency()
    for v in range(g.n):
        holders = set(occurs[v])
        seen = {occurs[v][0]}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in holders and y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(holders):
            return Violation("connectivity", v, f"bags holding vertex {v} are not connected")
    if td.width > td.declared_width:
        return Violation("width", td.width, f"width {td.width} exceeds declared {td.declared_width}")
    return td.width


@dataclass(frozen=True)
class CutOrder:
    """A linear order of all vertices."""

    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))
        if sorted(self.order) != list(range(len(self.order))):
            raise ValueError("cut order is not a permutation of the vertex ids")


def cut_order_width(g: Multigraph, co: CutOrder) -> int:
    """Largest number of edges crossing a gap of the order; loops never cross."""
    if len(co.order) != g.n:
        raise ValueError(f"cut order has {len(co.order)} vertices, graph has {g.n}")
    pos = {v: i for i, v in enumerate(co.order)}
    delta = [0] * (g.n + 1)
    for u, v in g.edges:
        a, b = sorted((pos[u], pos[v]))
        if a != b:
            delta[a] += 1
            delta[b] -= 1
    best = running = 0
    for d in delta[: max(g.n - 1, 0)]:
        running += d
        best = max(best, running)
    return best


def trivial_decompositions(g: Multigraph) -> tuple[TreeDecomposition, CutOrder]:
    """One bag with every vertex (singleton bags for edgeless graphs) and the identity order."""
    if g.m == 0 and g.n > 0:
        td = path_decomposition([{v} for v in range(g.n)])
    else:
        td = TreeDecomposition((frozenset(range(g.n)),))
    return td, CutOrder(tuple(range(g.n)))


LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
EDGE = "edge"
JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: str
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: int | None = None


@dataclass(frozen=True)
class NiceDecomposition:
    """Nice tree decomposition; ``nodes`` is in post-order and the last node is the root."""

    nodes: tuple[NiceNode, ...] = field(default_factory=tuple)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(nd.bag) for nd in self.nodes), default=0) - 1

    def has_join(self) -> bool:
        return any(nd.kind == JOIN for nd in self.nodes)


def _choose_root(td: TreeDecomposition) -> int:
    sizes = [len(b) for b in td.bags]
    candidates = range(len(td.bags))
    if td.is_path():
        adj = td.adjacency()
        candidates = [i for i in candidates if len(adj[i]) <= 1]
    return min(candidates, key=lambda i: (sizes[i], i))


def make_nice(g: Multigraph, td: TreeDecomposition) -> NiceDecomposition:
    """Nice decomposition with edge-introduce nodes built from a valid ``td``.

    The root is a smallest bag (an end of the path when ``td`` is a path, so
    path decompositions stay join-free). Each edge is introduced right above
    the topmost tree node whose bag holds both endpoints; the root bag is
    emptied by forget nodes.
    """
    check = validate_tree_decomposition(g, td)
    if isinstance(check, Violation):
        raise DecompositionError(str(check))
    adj = td.adjacency()
    root = _choose_root(td)
    parent = {root: -1}
    depth = {root: 0}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                order.append(y)
    children = {x: [y for y in adj[x] if parent.get(y) == x] for x in order}

    edges_at: dict[int, list[int]] = {x: [] for x in order}
    for idx, (u, v) in enumerate(g.edges):
        holders = [x for x in order if u in td.bags[x] and v in td.bags[x]]
        top = min(holders, key=lambda x: (depth[x], x))
        edges_at[top].append(idx)

    nodes: list[NiceNode] = []

    def add(kind: str, bag: frozenset[int], kids: tuple[int, ...], vertex=None, edge=None) -> int:
        nodes.append(NiceNode(kind, bag, kids, vertex, edge))
        return len(nodes) - 1

    def morph(top: int, target: frozenset[int]) -> int:
        bag = nodes[top].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            top = add(FORGET, bag, (top,), vertex=v)
        for v in sorted(target - bag):
            bag = bag | {v}
            top = add(INTRODUCE, bag, (top,), vertex=v)
        return top

    built: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        if children[x]:
            tops = [morph(built.pop(y), bag) for y in children[x]]
        else:
            tops = [morph(add(LEAF, frozenset(), ()), bag)]
        top = tops[0]
        for other in tops[1:]:
            top = add(JOIN, bag, (top, other))
        for idx in edges_at[x]:
            top = add(EDGE, bag, (top,), edge=idx)
        built[x] = top
    morph(built[root], frozenset())
    return NiceDecomposition(tuple(nodes))


def validate_nice(g: Multigraph, nd: NiceDecomposition) -> None:
    """Raise DecompositionError unless ``nd`` is a nice decomposition of ``g``."""
    if not nd.nodes:
        raise DecompositionError("empty nice decomposition")
    has_parent = [False] * len(nd.nodes)
    introduced = [0] * g.m
    forgotten = [0] * g.n
    for i, node in enumerate(nd.nodes):
        for c in node.children:
            if not 0 <= c < i or has_parent[c]:
                raise DecompositionError(f"node {i} has an invalid child {c}")
            has_parent[c] = True
        kids = [nd.nodes[c] for c in node.children]
        if node.kind == LEAF:
            ok = not kids and not node.bag
        elif node.kind == INTRODUCE:
            ok = len(kids) == 1 and node.vertex not in kids[0].bag and node.bag == kids[0].bag | {node.vertex}
        elif node.kind == FORGET:
            ok = len(kids) == 1 and node.vertex in kids[0].bag and node.bag == kids[0].bag - {node.vertex}
            if ok:
                forgotten[node.vertex] += 1
        elif node.kind == EDGE:
            ok = len(kids) == 1 and node.bag == kids[0].bag and node.edge is not None and 0 <= node.edge < g.m
            if ok:
                u, v = g.edges[node.edge]
                ok = u in node.bag and v in node.bag
                introduced[node.edge] += 1
        elif node.kind == JOIN:
            ok = len(kids) == 2 and kids[0].bag == node.bag == kids[1].bag
        else:
            ok = False
        if not ok:
            raise DecompositionError(f"node {i} ({node.kind}) violates nice-decomposition rules")
    if not all(has_parent[:-1]) or has_parent[-1]:
        raise DecompositionError("nodes are not a single rooted tree")
    if nd.nodes[-1].bag:
        raise DecompositionError("root bag is not empty")
    if any(c != 1 for c in introduced):
        raise DecompositionError("every edge must be introduced exactly once")
    if any(c != 1 for c in forgotten):
        raise DecompositionError("every vertex must be forgotten exactly once")


def as_nice(g: Multigraph, dec: TreeDecomposition | NiceDecomposition | None) -> NiceDecomposition:
    """Coerce a decomposition (or None, meaning the trivial one) to a validated nice one."""
    if dec is None:
        dec = trivial_decompositions(g)[0]
    if isinstance(dec, TreeDecomposition):
        return make_nice(g, dec)
    validate_nice(g, dec)
    return dec
