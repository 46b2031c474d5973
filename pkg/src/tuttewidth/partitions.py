"""Set partitions, the forest compatibility matrix and uncrossing.

Two representations are used. A *labelled* partition is a canonical tuple of
sorted blocks (blocks ordered by their minimum). A *positional* partition is
a restricted growth string (RGS) over the slots of an ordering: ``rgs[k]`` is
the block number of the element in slot ``k``, numbered by first occurrence.
The dynamic programs work positionally so uncrossing rewrites can be cached
independently of vertex labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Hashable, Iterable, Iterator, Sequence

from tuttewidth.graph import DisjointSet

Partition = tuple[tuple[int, ...], ...]
Rgs = tuple[int, ...]

MAX_MATRIX_N = 8


def partition(blocks: Iterable[Iterable[int]]) -> Partition:
    """Canonical form of a partition given as any iterable of blocks."""
    out = [tuple(sorted(b)) for b in blocks]
    if any(not b for b in out):
        raise ValueError("partition blocks must be non-empty")
    seen = [x for b in out for x in b]
    if len(seen) != len(set(seen)):
        raise ValueError("partition blocks must be disjoint")
    return tuple(sorted(out))


def ground(pi: Partition) -> tuple[int, ...]:
    return tuple(sorted(x for b in pi for x in b))


def singletons(labels: Iterable[int]) -> Partition:
    return partition([x] for x in labels)


def join(pi: Partition, rho: Partition) -> Partition:
    """Finest partition of the union of both grounds coarser than each."""
    labels = sorted(set(ground(pi)) | set(ground(rho)))
    index = {x: k for k, x in enumerate(labels)}
    ds = DisjointSet(len(labels))
    for block in (*pi, *rho):
        for x in block[1:]:
            ds.union(index[block[0]], index[x])
    groups: dict[int, list[int]] = {}
    for x in labels:
        groups.setdefault(ds.find(index[x]), []).append(x)
    return partition(groups.values())


def restrict(pi: Partition, subset: Iterable[int]) -> Partition:
    keep = set(subset)
    return partition(b for b in ([x for x in block if x in keep] for block in pi) if b)


def _check_interval(order: Sequence[int], interval: Sequence[int]) -> list[int]:
    pos = sorted(order.index(x) for x in interval)
    if not pos or pos[-1] - pos[0] + 1 != len(pos):
        raise ValueError(f"{tuple(interval)} is not an interval of the order {tuple(order)}")
    return pos


def contract(pi: Partition, order: Sequence[int], interval: Sequence[int], label: int) -> tuple[Partition, tuple[int, ...]]:
    """Merge the blocks meeting ``interval`` and replace the interval by ``label``.

    Returns the contracted partition and the order with ``label`` in the
    interval's place.
    """
    pos = _check_interval(list(order), interval)
    inside = set(interval)
    touched = [b for b in pi if inside & set(b)]
    kept = [b for b in pi if not inside & set(b)]
    merged = [x for b in touched for x in b if x not in inside] + [label]
    new_order = tuple(order[: pos[0]]) + (label,) + tuple(order[pos[-1] + 1:])
    return partition(kept + [merged]), new_order


def blowup(pi: Partition, order: Sequence[int], label: int, interval: Sequence[int]) -> tuple[Partition, tuple[int, ...]]:
    """Replace ``label`` by the elements of ``interval`` inside its block."""
    order = list(order)
    if label not in order:
        raise ValueError(f"label {label} is not in the ground set")
    at = order.index(label)
    blocks = [list(b) for b in pi]
    for b in blocks:
        if label in b:
            b.remove(label)
            b.extend(interval)
    new_order = tuple(order[:at]) + tuple(interval) + tuple(order[at + 1:])
    return partition(blocks), new_order


def to_rgs(pi: Partition, order: Sequence[int]) -> Rgs:
    block_of = {x: k for k, b in enumerate(pi) for x in b}
    if set(block_of) != set(order) or len(order) != len(block_of):
        raise ValueError("order and partition ground differ")
    return canon_rgs(block_of[x] for x in order)


def from_rgs(rgs: Rgs, order: Sequence[int]) -> Partition:
    blocks: dict[int, list[int]] = {}
    for x, b in zip(order, rgs):
        blocks.setdefault(b, []).append(x)
    return partition(blocks.values())


def canon_rgs(seq: Iterable[Hashable]) -> Rgs:
    """Relabel block names by first occurrence."""
    names: dict[Hashable, int] = {}
    return tuple(names.setdefault(x, len(names)) for x in seq)


def rgs_blocks(rgs: Rgs) -> int:
    return max(rgs) + 1 if rgs else 0


@lru_cache(maxsize=None)
def rgs_noncrossing(rgs: Rgs) -> bool:
    """No a < b < c < d with a, c in one block and b, d in another."""
    # Scan left to right with a stack of open blocks: a block may only be
    # revisited while it is on top of the stack.
    last = {}
    for p, x in enumerate(rgs):
        last[x] = p
    stack: list[int] = []
    for p, x in enumerate(rgs):
        if stack and stack[-1] == x:
            pass
        elif x in stack:
            return False
        else:
            stack.append(x)
        if last[x] == p:
            stack.pop()
            # a closed block must have been on top
    return True


def is_noncrossing(pi: Partition, order: Sequence[int] | None = None) -> bool:
    if order is None:
        order = ground(pi)
    return rgs_noncrossing(to_rgs(pi, order))


def all_rgs(n: int) -> Iterator[Rgs]:
    """Restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return

    def grow(prefix: list[int], top: int) -> Iterator[Rgs]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for x in range(top + 2):
            prefix.append(x)
            yield from grow(prefix, max(top, x))
            prefix.pop()

    yield from grow([0], 0)


def partitions_of(labels: Sequence[int]) -> list[Partition]:
    """All partitions of ``labels`` in restricted-growth-string order."""
    return [from_rgs(r, labels) for r in all_rgs(len(labels))]


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def induces_cycle(pi: Partition, rho: Partition) -> bool:
    """Glue a star per block of each partition and look for a cycle."""
    labels = ground(pi)
    if labels != ground(rho):
        raise ValueError("partitions live on different ground sets")
    index = {x: k for k, x in enumerate(labels)}
    ds = DisjointSet(len(labels))
    for block in (*pi, *rho):
        centre = index[block[0]]
        for x in block[1:]:
            if not ds.union(centre, index[x]):
                return True
    return False


def cycle_excess(pi: Partition, rho: Partition) -> int:
    """``n - |pi| - |rho| + |pi join rho|``; positive exactly when a cycle is induced."""
    return len(ground(pi)) - len(pi) - len(rho) + len(join(pi, rho))


@lru_cache(maxsize=None)
def join_rgs(a: Rgs, b: Rgs) -> tuple[Rgs, int]:
    """Join of two positional partitions over the same slots, with the cycle excess."""
    n = len(a)
    ds = DisjointSet(n)
    for rgs in (a, b):
        first: dict[int, int] = {}
        for p, x in enumerate(rgs):
            ds.union(first.setdefault(x, p), p)
    joined = canon_rgs(ds.find(p) for p in range(n))
    excess = n - rgs_blocks(a) - rgs_blocks(b) + rgs_blocks(joined)
    return joined, excess


@dataclass(frozen=True)
class CompatMatrix:
    """Forest compatibility matrix over all partitions of ``1..n``."""

    n: int
    partitions: tuple[Partition, ...]
    rows: tuple[tuple[int, ...], ...]

    def dump(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.rows)


def compat_matrix(n: int) -> CompatMatrix:
    if n > MAX_MATRIX_N:
        raise ValueError(f"compat_matrix is limited to n <= {MAX_MATRIX_N} (Bell({n}) rows)")
    rgss = list(all_rgs(n))
    parts = tuple(from_rgs(r, range(1, n + 1)) for r in rgss)
    rows = tuple(tuple(0 if join_rgs(a, b)[1] > 0 else 1 for b in rgss) for a in rgss)
    return CompatMatrix(n, parts, rows)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def exact_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    if not rows:
        return 0
    return len(_rref([list(r) for r in rows], len(rows[0]))[1])


def solve_left(basis: Sequence[Sequence[int]], target: Sequence[int]) -> list[Fraction]:
    """Coefficients ``c`` with ``sum_k c[k] * basis[k] == target``, exactly.

    Raises ValueError if the basis rows are dependent or ``target`` is not in
    their span.
    """
    k = len(basis)
    aug = [[basis[j][i] for j in range(k)] + [target[i]] for i in range(len(target))]
    reduced, pivots = _rref(aug, k + 1)
    if pivots != list(range(k)):
        raise ValueError("rows are not independent or target is outside their span")
    return [reduced[j][k] for j in range(k)]


def _exact(c: Fraction) -> int | Fraction:
    return c.numerator if c.denominator == 1 else c


@lru_cache(maxsize=None)
def build_uncross_tables() -> dict[int, dict[Rgs, tuple[tuple[Rgs, int | Fraction], ...]]]:
    """Express every row of F_4 and F_5 through the non-crossing rows.

    Keys are positional partitions of ``0..n'-1``; each value lists
    ``(non-crossing partition, coefficient)`` pairs. Raises RuntimeError if the
    non-crossing rows fail to be a basis of the row space.
    """
    tables = {}
    for n in (4, 5):
        rgss = list(all_rgs(n))
        matrix = {a: [0 if join_rgs(a, b)[1] > 0 else 1 for b in rgss] for a in rgss}
        nc = [a for a in rgss if rgs_noncrossing(a)]
        if exact_rank([matrix[a] for a in nc]) != len(nc) or exact_rank(list(matrix.values())) != len(nc):
            raise RuntimeError(f"non-crossing rows of F_{n} do not form a row basis")
        table = {}
        for a in rgss:
            if rgs_noncrossing(a):
                table[a] = ((a, 1),)
                continue
            coeffs = solve_left([matrix[r] for r in nc], matrix[a])
            table[a] = tuple((r, _exact(c)) for r, c in zip(nc, coeffs) if c != 0)
        tables[n] = table
    return tables


@lru_cache(maxsize=None)
def uncross_swapped(rgs: Rgs, i: int) -> tuple[tuple[Rgs, int | Fraction], ...]:
    """Rewrite a positional partition that crosses only because slots ``i``, ``i+1`` were swapped.

    ``rgs`` is given in the post-swap slots. Returns non-crossing positional
    partitions with coefficients whose compatibility rows sum to the row of
    ``rgs``.
    """
    if rgs_noncrossing(rgs):
        return ((rgs, 1),)
    a, b = rgs[i], rgs[i + 1]
    members = [p for p, x in enumerate(rgs) if x == a or x == b]
    run_of: dict[int, int] = {}
    runs = 0
    prev = None
    for p in members:
        if rgs[p] != prev:
            runs += 1
            prev = rgs[p]
        run_of[p] = runs - 1
    if runs not in (4, 5):
        raise ValueError(f"{rgs} is not one adjacent swap away from non-crossing at slot {i}")
    alternating = tuple(k % 2 for k in range(runs))
    out: dict[Rgs, int | Fraction] = {}
    for small, coeff in build_uncross_tables()[runs][alternating]:
        names: list[Hashable] = [("kept", x) for x in rgs]
        for p in members:
            names[p] = ("run", small[run_of[p]])
        key = canon_rgs(names)
        out[key] = out.get(key, 0) + coeff
    return tuple((r, c) for r, c in out.items() if c != 0)


def swap_slots(rgs: Rgs, i: int) -> Rgs:
    s = list(rgs)
    s[i], s[i + 1] = s[i + 1], s[i]
    return canon_rgs(s)


def swap_vector(vec: dict[Rgs, object], i: int) -> dict[Rgs, object]:
    """Swap slots ``i``, ``i+1`` of a reduced vector and re-reduce it on the new order."""
    out: dict[Rgs, object] = {}
    for rgs, val in vec.items():
        for key, c in uncross_swapped(swap_slots(rgs, i), i):
            out[key] = out.get(key, 0) + c * val
    return {k: v for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def reduce_to_natural(rgs: Rgs) -> tuple[tuple[Rgs, int | Fraction], ...]:
    """Combination of partitions non-crossing in slot order representing ``rgs``.

    Starts from the order listing each block contiguously (where ``rgs`` is
    non-crossing) and bubble-sorts it back to slot order, uncrossing at
    every adjacent swap.
    """
    if rgs_noncrossing(rgs):
        return ((rgs, 1),)
    first: dict[int, int] = {}
    for p, x in enumerate(rgs):
        first.setdefault(x, p)
    slots = sorted(range(len(rgs)), key=lambda p: (first[rgs[p]], p))
    vec: dict[Rgs, object] = {canon_rgs(rgs[p] for p in slots): 1}
    for k in _bubble_schedule(slots):
        vec = swap_vector(vec, k)
    return tuple(vec.items())


def _bubble_schedule(seq: list[int]) -> list[int]:
    """Adjacent swaps (by left index) that bubble-sort ``seq`` in place."""
    swaps = []
    n = len(seq)
    for end in range(n - 1, 0, -1):
        for k in range(end):
            if seq[k] > seq[k + 1]:
                seq[k], seq[k + 1] = seq[k + 1], seq[k]
                swaps.append(k)
    return swaps


def uncross_after_swap(pi: Partition, order: Sequence[int], i: int) -> dict[Partition, int | Fraction]:
    """Rows of partitions non-crossing on ``order`` with slots ``i``, ``i+1`` swapped that sum to ``pi``'s row.

    ``pi`` must be non-crossing on ``order``.
    """
    order = tuple(order)
    rgs = to_rgs(pi, order)
    if not rgs_noncrossing(rgs):
        raise ValueError(f"{pi} is crossing on {order}")
    swapped = list(order)
    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
    return {from_rgs(r, swapped): c for r, c in uncross_swapped(swap_slots(rgs, i), i)}
