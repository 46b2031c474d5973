"""Command-line front end.

Exit codes: 0 success, 2 unreadable input, 3 algorithm not applicable,
4 oracle disagreement, 5 resource guard.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from tuttewidth.errors import DecompositionError, DegenerateGadgetError, InapplicableError, ResourceGuardError
from tuttewidth.general import eval_from_counts, general_dp, tutte_coefficients
from tuttewidth.graph import Violation, cut_order_width, trivial_decompositions, validate_tree_decomposition
from tuttewidth.io import FormatError, format_cut_order, format_gr, format_td, read_cut_order, read_gr, read_td
from tuttewidth.oracle import brute_tutte
from tuttewidth.partitions import bell, catalan, compat_matrix, exact_rank, is_noncrossing
from tuttewidth.poly import format_bivariate
from tuttewidth.reduction import TRANSFORMS, choose_route, evaluate_point

EXIT_OK, EXIT_PARSE, EXIT_INAPPLICABLE, EXIT_MISMATCH, EXIT_GUARD = 0, 2, 3, 4, 5
VERIFY_MAX_EDGES = 20
RANK_MAX_N = 6
ALGORITHMS = ("auto", "general", "forest", "ising", "coloring", "oracle")

_RATIONAL = re.compile(r"-?\d+(/\d+)?")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_rational(text: str) -> Fraction:
    """Accept ``p``, ``-p`` or ``p/q``; floats are rejected to keep inputs exact."""
    if not _RATIONAL.fullmatch(text.strip()):
        raise CliError(EXIT_PARSE, f"not an exact rational: {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise CliError(EXIT_PARSE, f"zero denominator in {text!r}") from None


def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _load(args):
    try:
        g = read_gr(args.graph)
        td = read_td(args.td) if getattr(args, "td", None) else None
        pd = read_td(args.pd) if getattr(args, "pd", None) else None
        co = read_cut_order(args.cut) if getattr(args, "cut", None) else None
    except (OSError, FormatError, ValueError) as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None
    for name, dec in (("tree decomposition", td), ("path decomposition", pd)):
        if dec is not None:
            res = validate_tree_decomposition(g, dec)
            if isinstance(res, Violation):
                raise CliError(EXIT_PARSE, f"invalid {name}: {res}")
    if pd is not None and not pd.is_path():
        raise CliError(EXIT_PARSE, "path decomposition file does not describe a path")
    if co is not None and len(co.order) != g.n:
        raise CliError(EXIT_PARSE, f"cut order lists {len(co.order)} vertices, graph has {g.n}")
    return g, td, pd, co


def _verify(g, x, y, value) -> str:
    if g.m > VERIFY_MAX_EDGES:
        raise CliError(EXIT_GUARD, f"--verify needs |E| <= {VERIFY_MAX_EDGES}, graph has {g.m}")
    expected = brute_tutte(g, x, y)
    if expected != value:
        raise CliError(EXIT_MISMATCH, f"oracle gives {fmt(expected)}, algorithm gave {fmt(value)}")
    return "oracle"


def cmd_eval(args) -> dict:
    g, td, _, _ = _load(args)
    x, y = (parse_rational(s) for s in args.point)
    algo = args.algorithm
    route = choose_route(g, x, y, td) if algo == "auto" else algo
    if algo == "oracle":
        value = brute_tutte(g, x, y)
    elif algo == "general":
        value = eval_from_counts(general_dp(g, td), x, y)
    else:
        value = evaluate_point(g, x, y, td, route)
    report = {
        "command": "eval",
        "graph": str(args.graph),
        "point": [fmt(x), fmt(y)],
        "algorithm": route,
        "width": (td or trivial_decompositions(g)[0]).width,
        "value": fmt(value),
    }
    if args.verify:
        report["verified"] = _verify(g, x, y, value)
    return report


def cmd_coeffs(args) -> dict:
    g, td, _, _ = _load(args)
    coeffs = tutte_coefficients(general_dp(g, td))
    report = {
        "command": "coeffs",
        "graph": str(args.graph),
        "algorithm": "general",
        "width": (td or trivial_decompositions(g)[0]).width,
        "polynomial": format_bivariate(coeffs),
        "coefficients": [[i, j, fmt(c)] for (i, j), c in sorted(coeffs.items())],
    }
    if args.verify:
        for x, y in ((2, 3), (-1, 2), (Fraction(1, 2), -2)):
            total = sum((c * Fraction(x) ** i * Fraction(y) ** j for (i, j), c in coeffs.items()), Fraction(0))
            report["verified"] = _verify(g, x, y, total)
    return report


def cmd_transform(args) -> dict:
    g, td, pd, co = _load(args)
    if args.k < 1:
        raise CliError(EXIT_INAPPLICABLE, "k must be at least 1")
    td = td or trivial_decompositions(g)[0]
    res = TRANSFORMS[args.op](g, args.k, td, pd, co)
    h = res.graph
    Path(args.out).write_text(format_gr(h))
    widths = {"treewidth": [td.width, res.tree_decomposition.width]}
    if pd is not None:
        widths["pathwidth"] = [pd.width, res.path_decomposition.width]
    if co is not None:
        widths["cutwidth"] = [cut_order_width(g, co), cut_order_width(h, res.cut_order)]
    outputs = [str(args.out)]
    for path, text in (
        (args.td_out, format_td(res.tree_decomposition, h.n)),
        (args.pd_out, format_td(res.path_decomposition, h.n) if res.path_decomposition else None),
        (args.cut_out, format_cut_order(res.cut_order) if res.cut_order else None),
    ):
        if path:
            if text is None:
                raise CliError(EXIT_INAPPLICABLE, f"no input decomposition to transform for {path}")
            Path(path).write_text(text)
            outputs.append(str(path))
    return {
        "command": "transform",
        "graph": str(args.graph),
        "algorithm": f"{args.op} k={args.k}",
        "vertices": [g.n, h.n],
        "edges": [g.m, h.m],
        "widths": widths,
        "outputs": outputs,
    }


def cmd_rank(args) -> dict:
    n = args.n
    if not 0 <= n <= RANK_MAX_N:
        raise CliError(EXIT_GUARD, f"rank check supports 0 <= n <= {RANK_MAX_N}")
    mat = compat_matrix(n)
    rank = exact_rank(mat.rows) if n else 1
    nc_rows = [row for pi, row in zip(mat.partitions, mat.rows) if is_noncrossing(pi)]
    nc_rank = exact_rank(nc_rows) if n else 1
    basis_ok = nc_rank == len(nc_rows) == rank
    return {
        "command": "rank",
        "algorithm": "exact elimination",
        "n": n,
        "bell": bell(n),
        "catalan": catalan(n),
        "rank": rank,
        "basis": "OK" if basis_ok else "FAILED",
    }


def _text(report: dict) -> str:
    lines = []
    for key, val in report.items():
        if key == "coefficients":
            continue
        if isinstance(val, dict):
            val = ", ".join(f"{k} {a} -> {b}" for k, (a, b) in val.items())
        elif isinstance(val, list):
            val = " -> ".join(str(v) for v in val) if key in ("vertices", "edges") else " ".join(str(v) for v in val)
        lines.append(f"{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tuttewidth", description="Exact Tutte polynomial evaluation on tree decompositions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, decomps=("td",)):
        p.add_argument("graph", help="graph in .gr format")
        if "td" in decomps:
            p.add_argument("--td", help="tree decomposition in .td format")
        if "pd" in decomps:
            p.add_argument("--pd", help="path decomposition in .td format")
        if "cut" in decomps:
            p.add_argument("--cut", help="vertex order file for cutwidth")
        p.add_argument("--json", action="store_true", help="emit JSON")

    p = sub.add_parser("eval", help="evaluate T(G; x, y)")
    common(p)
    p.add_argument("--point", nargs=2, required=True, metavar=("X", "Y"))
    p.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    p.add_argument("--verify", action="store_true", help=f"check against the oracle (|E| <= {VERIFY_MAX_EDGES})")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("coeffs", help="all coefficients of T(G; x, y)")
    common(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("transform", help="stretch / thicken / insulated thickening")
    common(p, ("td", "pd", "cut"))
    p.add_argument("--op", choices=sorted(TRANSFORMS), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", required=True, help="output .gr path")
    p.add_argument("--td-out")
    p.add_argument("--pd-out")
    p.add_argument("--cut-out")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("rank", help="rank of the forest compatibility matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rank)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InapplicableError, DegenerateGadgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except DecompositionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    report["wall_time"] = f"{time.perf_counter() - start:.3f}s"
    print(json.dumps(report, indent=2) if args.json else _text(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
