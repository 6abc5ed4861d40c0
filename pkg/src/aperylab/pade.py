"""Exact Padé approximants of truncated power series over Q.

Series are lists of coefficients in u (= x^2), lowest order first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import RationalFunction, RationalPoly


class InconsistentSystem(ValueError):
    """No rational function of the requested degrees matches the series."""


@dataclass(frozen=True)
class PadeRequest:
    series: tuple
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0:
            raise ValueError("degrees must be nonnegative")
        if self.p + self.q + 1 > len(self.series):
            raise ValueError(
                f"[{self.p}/{self.q}] needs {self.p + self.q + 1} coefficients, got {len(self.series)}")


def _coeffs(series) -> list[Fraction]:
    if isinstance(series, RationalPoly):
        return list(series.coeffs)
    return [Fraction(c) for c in series]


def _bareiss_solve(rows: list[list[Fraction]]):
    """Solve an exactly square augmented system [A | b] by fraction-free elimination.

    Rows are first scaled to integers. Returns the solution as Fractions,
    or None when A is singular.
    """
    n = len(rows)
    M = []
    for row in rows:
        l = math.lcm(*(c.denominator for c in row))
        M.append([int(c * l) for c in row])
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return None
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(M[i][n])
        for j in range(i + 1, n):
            acc -= M[i][j] * x[j]
        x[i] = acc / M[i][i]
    return x


def _solve_exact(s: list[Fraction], p: int, q: int):
    """den (den(0)=1, degree <= q) and num for the [p/q] system, or None if singular."""
    def c(i):
        return s[i] if i >= 0 else Fraction(0)

    if q == 0:
        den = [Fraction(1)]
    else:
        # sum_{i=1..q} d_i s_{j-i} = -s_j for j = p+1 .. p+q
        rows = [[c(j - i) for i in range(1, q + 1)] + [-c(j)] for j in range(p + 1, p + q + 1)]
        d = _bareiss_solve(rows)
        if d is None:
            return None
        den = [Fraction(1)] + d
    num = [sum((den[i] * c(j - i) for i in range(min(j, q) + 1)), Fraction(0)) for j in range(p + 1)]
    return RationalPoly(num), RationalPoly(den)


def matches(f: RationalFunction, series: Sequence, order: int | None = None) -> bool:
    s = _coeffs(series)
    order = len(s) if order is None else order
    if f.den[0] == 0:
        return False
    return f.series(order) == s[:order]


def pade_fit(series, p: int, q: int) -> RationalFunction:
    """The [p/q] approximant, canonicalized (lowest terms, monic denominator).

    When the Toeplitz system is singular, smaller degrees are tried (q first,
    then p); any rational function of type at most (p, q) that matches
    through u^(p+q) is the unique one, so the first hit is returned.
    """
    s = _coeffs(series)
    PadeRequest(tuple(s), p, q)
    need = p + q + 1
    for total in range(p + q, -1, -1):
        for qq in range(min(q, total), -1, -1):
            pp = total - qq
            if pp > p:
                continue
            sol = _solve_exact(s, pp, qq)
            if sol is None:
                continue
            num, den = sol
            f = RationalFunction(num, den)
            if matches(f, s, need):
                return f
    raise InconsistentSystem(f"no rational function of type ({p},{q}) matches the series")


def pade_scan(series, max_deg: int, order: int | None = None) -> list[tuple]:
    """All (p, q, f, validated_order) with p, q <= max_deg whose approximant
    reproduces every supplied coefficient, sorted by (p+q, p)."""
    s = _coeffs(series)
    if order is not None:
        s = s[:order]
    if len(s) < 3:
        raise ValueError("pade_scan needs at least 3 coefficients")
    out = []
    for total in range(0, 2 * max_deg + 1):
        for pp in range(0, max_deg + 1):
            qq = total - pp
            if qq < 0 or qq > max_deg or total + 1 > len(s):
                continue
            try:
                f = pade_fit(s, pp, qq)
            except InconsistentSystem:
                continue
            if matches(f, s):
                out.append((pp, qq, f, len(s)))
    return out


def minimal_candidate(series, max_deg: int):
    """First pade_scan hit or None."""
    hits = pade_scan(series, max_deg)
    return hits[0] if hits else None
