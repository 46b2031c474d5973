"""Exact univariate polynomials, interpolation and bivariate Tutte coefficient tables."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence


class UniPoly:
    """Polynomial over the rationals, coefficients lowest degree first.

    ``offset`` shifts every exponent, so ``UniPoly([1, 2], offset=-1)`` is
    ``t^-1 + 2``.
    """

    __slots__ = ("coeffs", "offset")

    def __init__(self, coeffs: Iterable = (), offset: int = 0):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        lead = 0
        while lead < len(cs) and cs[lead] == 0:
            lead += 1
        self.coeffs = tuple(cs[lead:])
        self.offset = offset + lead if self.coeffs else 0

    @property
    def degree(self) -> int:
        return self.offset + len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def low_degree(self) -> int:
        return self.offset

    def is_polynomial(self) -> bool:
        return self.offset >= 0

    def dense(self) -> list[Fraction]:
        """Coefficients of t^0..t^degree; requires no negative exponents."""
        if self.offset < 0:
            raise ValueError("Laurent polynomial has negative exponents")
        return [Fraction(0)] * self.offset + list(self.coeffs)

    def shift(self, k: int) -> UniPoly:
        """Multiply by t^k."""
        return UniPoly(self.coeffs, self.offset + k)

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc * t ** self.offset if self.coeffs else acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and self.offset == other.offset

    def __hash__(self):
        return hash((self.coeffs, self.offset))

    def __add__(self, other: UniPoly) -> UniPoly:
        lo = min(self.offset, other.offset)
        size = max(self.offset + len(self.coeffs), other.offset + len(other.coeffs)) - lo
        out = [Fraction(0)] * max(size, 0)
        for p in (self, other):
            for k, c in enumerate(p.coeffs):
                out[p.offset - lo + k] += c
        return UniPoly(out, lo)

    def __mul__(self, other: UniPoly) -> UniPoly:
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            for b, cb in enumerate(other.coeffs):
                out[a + b] += ca * cb
        return UniPoly(out, self.offset + other.offset)

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]}, offset={self.offset})"

    def __str__(self) -> str:
        terms = [(self.offset + k, c) for k, c in enumerate(self.coeffs) if c]
        return format_terms([(c, _mono("t", e)) for e, c in reversed(terms)])


def _mono(var: str, e: int) -> str:
    return "" if e == 0 else var if e == 1 else f"{var}^{e}"


def format_terms(terms: Sequence[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    out = []
    for c, mono in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def interpolate(points: Sequence[tuple]) -> UniPoly:
    """The unique polynomial of degree < len(points) through ``points``.

    Solves the Vandermonde system by exact Gaussian elimination.
    """
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissas must be distinct")
    d = len(xs)
    rows = [[x ** k for k in range(d)] + [y] for x, y in zip(xs, ys)]
    for col in range(d):
        piv = next(r for r in range(col, d) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(d):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return UniPoly([rows[k][d] for k in range(d)])


def shifted_to_monomial(coeffs: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    """Rewrite ``sum c[(a, b)] (x-1)^a (y-1)^b`` in the monomial basis."""
    out: dict[tuple[int, int], int] = {}
    for (a, b), c in coeffs.items():
        for p in range(a + 1):
            ca = c * comb(a, p) * (-1) ** (a - p)
            for q in range(b + 1):
                key = (p, q)
                out[key] = out.get(key, 0) + ca * comb(b, q) * (-1) ** (b - q)
    return {k: v for k, v in out.items() if v}


def format_bivariate(coeffs: dict[tuple[int, int], int]) -> str:
    """``{(2, 0): 1, (1, 0): 1, (0, 1): 1}`` -> ``"x^2 + x + y"``."""
    keys = sorted(coeffs, key=lambda k: (-(k[0] + k[1]), -k[0]))
    terms = []
    for p, q in keys:
        mono = "*".join(m for m in (_mono("x", p), _mono("y", q)) if m)
        terms.append((Fraction(coeffs[p, q]), mono))
    return format_terms(terms)


def restrict_to_curve(coeffs: dict[tuple[int, int], int], alpha, n_vertices: int) -> UniPoly:
    """``t^n * T(alpha/t + 1, t + 1)`` from monomial coefficients of T."""
    alpha = Fraction(alpha)
    total = UniPoly()
    for (p, q), c in coeffs.items():
        x_part = _power(UniPoly([alpha, 1], offset=-1), p)
        y_part = _power(UniPoly([1, 1]), q)
        total = total + x_part * y_part * UniPoly([c])
    return total.shift(n_vertices)


def _power(p: UniPoly, k: int) -> UniPoly:
    out = UniPoly([1])
    for _ in range(k):
        out = out * p
    return out
