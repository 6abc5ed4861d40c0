"""Exact integer/rational arithmetic: binomials, Pochhammer symbols, Bernoulli
numbers, polynomials and rational functions over Q, and additive partitions.

Everything here works on :class:`fractions.Fraction` and Python ints, so
equalities are literal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Partition = tuple  # nonincreasing tuple of positive ints; () is the null partition


class PoleError(ZeroDivisionError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer(a, k: int) -> Fraction:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer requires k >= 0")
    a = Fraction(a)
    out = Fraction(1)
    for j in range(k):
        out *= a + j
        if not out:
            break
    return out


def _tangent_numbers(n: int) -> list[int]:
    # Brent-Harvey in-place recurrence; T[k] is the k-th tangent number.
    t = [0] * (n + 1)
    if n == 0:
        return t
    t[1] = 1
    for k in range(2, n + 1):
        t[k] = (k - 1) * t[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j]
    return t


_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli_even(n: int) -> Fraction:
    """B_{2n} with x coth x = sum_n (2x)^{2n} B_{2n} / (2n)!, so B_0 = 1, B_2 = 1/6."""
    if n < 0:
        raise ValueError("bernoulli_even requires n >= 0")
    if n >= len(_BERNOULLI_CACHE):
        size = max(n, 2 * len(_BERNOULLI_CACHE))
        t = _tangent_numbers(size)
        table = [Fraction(1)]
        for k in range(1, size + 1):
            sign = 1 if k % 2 else -1
            table.append(Fraction(sign * 2 * k * t[k], 4**k * (4**k - 1)))
        _BERNOULLI_CACHE[:] = table
    return _BERNOULLI_CACHE[n]


# --------------------------------------------------------------------------
# partitions


def partitions_of(m: int, order: str = "length") -> list[Partition]:
    """All additive partitions of ``m`` as nonincreasing tuples.

    ``order="length"`` lists shorter partitions first and, within a length,
    larger entries first at the first differing position. ``order="revlex"``
    is plain reverse-lexicographic order, which is how the printed alpha
    table lays out weights 6 and above.
    """
    if m < 0:
        raise ValueError("partitions_of requires m >= 0")
    out: list[Partition] = []

    def rec(rest: int, cap: int, prefix: tuple):
        if rest == 0:
            out.append(prefix)
            return
        for part in range(min(rest, cap), 0, -1):
            rec(rest - part, part, prefix + (part,))

    rec(m, m, ())
    if order == "length":
        out.sort(key=lambda p: (len(p), tuple(-a for a in p)))
    elif order != "revlex":
        raise ValueError(f"unknown partition order {order!r}")
    return out


def partition_str(p: Partition) -> str:
    return "[" + ",".join(str(a) for a in p) + "]"


def parse_partition(text: str) -> Partition:
    body = text.strip().strip("[]").strip()
    if not body:
        return ()
    parts = tuple(int(a) for a in body.split(","))
    if any(a <= 0 for a in parts):
        raise ValueError(f"partition entries must be positive: {text!r}")
    return tuple(sorted(parts, reverse=True))


# --------------------------------------------------------------------------
# serialization


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


# --------------------------------------------------------------------------
# polynomials over Q


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial with rational coefficients, lowest degree first.

    The variable is ``u`` (standing for x^2 wherever the series are even in x).
    """

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls([c])

    @classmethod
    def linear(cls, c0, c1) -> "RationalPoly":
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __call__(self, u):
        acc = Fraction(0) if isinstance(u, (int, Fraction)) else 0 * u
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if self.degree < dq:
            return RationalPoly(), self
        quot = [Fraction(0)] * (self.degree - dq + 1)
        inv_lead = 1 / other.lead
        for i in range(self.degree - dq, -1, -1):
            c = rem[i + dq] * inv_lead
            quot[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return RationalPoly(quot), RationalPoly(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            return self
        inv = 1 / self.lead
        return RationalPoly(c * inv for c in self.coeffs)

    def series(self, order: int) -> list[Fraction]:
        """Coefficients 0..order-1, zero-padded."""
        return [self[i] for i in range(order)]

    def __repr__(self):
        return f"RationalPoly([{', '.join(format_rational(c) for c in self.coeffs)}])"


def _as_poly(x) -> RationalPoly:
    if isinstance(x, RationalPoly):
        return x
    return RationalPoly([x])


def poly_gcd(a: RationalPoly, b: RationalPoly) -> RationalPoly:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_from_roots(roots: Sequence, lead=1) -> RationalPoly:
    p = RationalPoly([lead])
    for r in roots:
        p = p * RationalPoly([-Fraction(r), 1])
    return p


@dataclass(frozen=True)
class RationalFunction:
    """num/den in lowest terms with a monic denominator."""

    num: RationalPoly
    den: RationalPoly

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = RationalPoly([1]) if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.lead
        num = RationalPoly(c / lead for c in num.coeffs)
        den = den.monic()
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def canonical(self) -> "RationalFunction":
        return RationalFunction(self.num, self.den)

    def __call__(self, u):
        d = self.den(u)
        if d == 0:
            raise PoleError(f"pole at u={u}")
        return self.num(u) / d

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(_as_poly(other))
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction(_as_poly(other))
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def series(self, order: int) -> list[Fraction]:
        """First ``order`` Maclaurin coefficients; needs den(0) != 0."""
        d0 = self.den[0]
        if d0 == 0:
            raise PoleError("rational function has a pole at u=0")
        out: list[Fraction] = []
        for i in range(order):
            acc = self.num[i]
            for j in range(1, min(i, self.den.degree) + 1):
                acc -= self.den[j] * out[i - j]
            out.append(acc / d0)
        return out

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def ratfun_eval(f: RationalFunction, u) -> Fraction:
    return f(Fraction(u))


def product_form(const, num_roots: Sequence, den_roots: Sequence) -> RationalFunction:
    """const * prod(u - a) / prod(u - b), canonicalized."""
    return RationalFunction(poly_from_roots(num_roots, const), poly_from_roots(den_roots))
