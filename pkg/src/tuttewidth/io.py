"""PACE-style text formats for graphs, tree decompositions and cut orders.

Vertices are 1-indexed on disk and 0-indexed in memory.
"""

from __future__ import annotations

from pathlib import Path

from tuttewidth.graph import CutOrder, Multigraph, TreeDecomposition


class FormatError(ValueError):
    pass


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("c"):
            yield lineno, line.split()


def parse_gr(text: str) -> Multigraph:
    n = m = None
    edges = []
    for lineno, tok in _lines(text):
        if tok[0] == "p":
            if len(tok) != 4 or n is not None:
                raise FormatError(f"line {lineno}: bad or repeated header")
            n, m = int(tok[2]), int(tok[3])
            continue
        if n is None:
            raise FormatError(f"line {lineno}: edge before 'p' header")
        if len(tok) != 2:
            raise FormatError(f"line {lineno}: expected '<u> <v>'")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"line {lineno}: vertex out of range 1..{n}")
        edges.append((u - 1, v - 1))
    if n is None:
        raise FormatError("missing 'p tw <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return Multigraph(n, tuple(edges))


def format_gr(g: Multigraph) -> str:
    out = [f"p tw {g.n} {g.m}"]
    out += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(out) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges = []
    for lineno, tok in _lines(text):
        try:
            if tok[0] == "s":
                if len(tok) != 5 or tok[1] != "td":
                    raise FormatError(f"line {lineno}: expected 's td <bags> <width+1> <n>'")
                header = (int(tok[2]), int(tok[3]), int(tok[4]))
            elif tok[0] == "b":
                bag_id = int(tok[1])
                if bag_id in bags:
                    raise FormatError(f"line {lineno}: bag {bag_id} listed twice")
                bags[bag_id] = frozenset(int(v) - 1 for v in tok[2:])
            else:
                if len(tok) != 2:
                    raise FormatError(f"line {lineno}: expected tree edge '<i> <j>'")
                tree_edges.append((int(tok[0]), int(tok[1])))
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: non-integer token") from None
    if header is None:
        raise FormatError("missing 's td' header")
    count, width_plus_one, _ = header
    if sorted(bags) != list(range(1, count + 1)):
        raise FormatError(f"expected bags 1..{count}")
    ordered = tuple(bags[i] for i in range(1, count + 1))
    edges = tuple((a - 1, b - 1) for a, b in tree_edges)
    return TreeDecomposition(ordered, edges, declared_width=width_plus_one - 1)


def format_td(td: TreeDecomposition, n: int) -> str:
    out = [f"s td {len(td.bags)} {td.declared_width + 1} {n}"]
    for i, bag in enumerate(td.bags, 1):
        out.append(" ".join(["b", str(i)] + [str(v + 1) for v in sorted(bag)]))
    out += [f"{a + 1} {b + 1}" for a, b in td.tree_edges]
    return "\n".join(out) + "\n"


def parse_cut_order(text: str) -> CutOrder:
    tokens = [tok for _, line in _lines(text) for tok in line]
    try:
        return CutOrder(tuple(int(t) - 1 for t in tokens))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_cut_order(co: CutOrder) -> str:
    return " ".join(str(v + 1) for v in co.order) + "\n"


def read_gr(path: str | Path) -> Multigraph:
    return parse_gr(Path(path).read_text())


def read_td(path: str | Path) -> TreeDecomposition:
    return parse_td(Path(path).read_text())


def read_cut_order(path: str | Path) -> CutOrder:
    return parse_cut_order(Path(path).read_text())
