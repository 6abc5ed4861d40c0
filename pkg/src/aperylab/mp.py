"""Multiprecision reals with an explicit working precision.

Values are ``mpmath`` numbers owned by a private :class:`mpmath.MPContext`
per precision, so nothing here touches ``mpmath.mp`` global state. A
:class:`Precision` carries the target decimal digits plus guard digits;
all computation runs at ``digits + guard``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .exact import bernoulli_even


class DomainError(ValueError):
    pass


class DivergenceError(ValueError):
    pass


@lru_cache(maxsize=None)
def _context(dps: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


@dataclass(frozen=True)
class Precision:
    digits: int = 50
    guard: int = 10

    def __post_init__(self):
        if self.digits < 30:
            raise ValueError("digits must be >= 30")
        if self.guard < 10:
            raise ValueError("guard must be >= 10")

    @property
    def dps(self) -> int:
        return self.digits + self.guard

    @property
    def ctx(self):
        return _context(self.dps)

    @property
    def eps(self):
        """10^-digits, the promised relative accuracy."""
        return self.ctx.mpf(10) ** (-self.digits)

    def raised(self, extra: int) -> "Precision":
        return Precision(self.digits + extra, self.guard)

    def mpf(self, value):
        """Convert ints, Fractions, decimal strings or mpmath numbers."""
        ctx = self.ctx
        if isinstance(value, Fraction):
            return ctx.mpf(value.numerator) / value.denominator
        if isinstance(value, str) and "/" in value:
            q = Fraction(value)
            return ctx.mpf(q.numerator) / q.denominator
        return ctx.mpf(value)


def const_pi(p: Precision):
    return +p.ctx.pi


def _em_tail(s: int, n: int, ctx):
    """sum_{k>n} k^-s to full relative precision (Euler-Maclaurin).

    The terms are summed directly up to A ~ n + dps + s, where the
    Euler-Maclaurin corrections shrink by about (s+2j)^2/(2 pi A)^2 per step.
    """
    if s < 2:
        raise ValueError("Hurwitz tail needs s >= 2")
    tol = ctx.mpf(10) ** (-ctx.dps - 5)
    A = max(n + 1, ctx.dps + s)
    head = ctx.fsum(ctx.mpf(k) ** (-s) for k in range(n + 1, A))
    a = ctx.mpf(A)
    a_pow = a ** (-s)
    total = head + a * a_pow / (s - 1) + a_pow / 2
    rising = ctx.mpf(s)  # (s)_(2j-1)
    fact = ctx.mpf(2)  # (2j)!
    power = a_pow / a  # A^(-s-2j+1)
    j = 1
    while True:
        b = bernoulli_even(j)
        term = ctx.mpf(b.numerator) / b.denominator * rising / fact * power
        total += term
        if abs(term) < tol * abs(total):
            return total
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power /= a * a
        j += 1
        if j > 10 * ctx.dps:
            raise DivergenceError("Euler-Maclaurin tail did not converge")


def hurwitz_tail(s: int, n: int, p: Precision):
    return _em_tail(s, n, p.ctx)


def zeta_int(s: int, p: Precision):
    """zeta(s) for integer s >= 2.

    Even s: exact Bernoulli number times pi^s. Odd s: Euler-Maclaurin, which
    shares nothing with the central binomial sums it is compared against.
    Once s exceeds a third of the working digits the Dirichlet series itself
    needs at most ~1000 terms and is summed directly.
    """
    if s < 2:
        raise DomainError("zeta_int requires s >= 2")
    return _zeta_int_cached(s, p.dps)


@lru_cache(maxsize=4096)
def _zeta_int_cached(s: int, dps: int):
    ctx = _context(dps)
    if 3 * (s - 1) >= dps:
        # 2^-s is already below the working epsilon: a short direct sum wins
        n_max = int(10 ** (dps / (s - 1))) + 2
        return ctx.fsum(ctx.mpf(k) ** (-s) for k in range(1, n_max + 1))
    if s % 2 == 0:
        n = s // 2
        b = bernoulli_even(n)
        sign = -1 if n % 2 == 0 else 1
        q = sign * b * 2 ** (s - 1) / math.factorial(s)
        return ctx.mpf(q.numerator) / q.denominator * ctx.pi**s
    return _em_tail(s, 0, ctx)


def polylog(n: int, z, p: Precision):
    """Li_n(z) = sum z^k/k^n for real |z| < 1, with a geometric tail bound."""
    ctx = p.ctx
    z = ctx.mpf(z)
    if n < 1:
        raise DomainError("polylog order must be >= 1")
    if abs(z) >= 1:
        raise DivergenceError("polylog series needs |z| < 1")
    if z == 0:
        return ctx.mpf(0)
    tol = ctx.mpf(10) ** (-p.dps)
    total = ctx.mpf(0)
    power = ctx.mpf(1)
    az = abs(z)
    k = 0
    while True:
        k += 1
        power *= z
        term = power / ctx.mpf(k) ** n
        total += term
        # remaining terms are bounded by |term| * |z| / (1 - |z|)
        if abs(term) * az / (1 - az) < tol * max(abs(total), 1):
            return total


def elementary(fn: str, x, p: Precision):
    """sqrt, log, exp, sin, cos, cot, csc, arcsin at working precision."""
    ctx = p.ctx
    x = p.mpf(x) if isinstance(x, (Fraction, str)) else ctx.mpf(x)
    if fn == "sqrt":
        if x < 0:
            raise DomainError("sqrt of a negative number")
        return ctx.sqrt(x)
    if fn == "log":
        if x <= 0:
            raise DomainError("log needs a positive argument")
        return ctx.log(x)
    if fn == "exp":
        return ctx.exp(x)
    if fn == "sin":
        return ctx.sin(x)
    if fn == "cos":
        return ctx.cos(x)
    if fn == "arcsin":
        if abs(x) > 1:
            raise DomainError("arcsin needs |x| <= 1")
        return ctx.asin(x)
    if fn in ("cot", "csc"):
        s = ctx.sin(x)
        if abs(s) < ctx.mpf(10) ** (-p.dps + 5):
            raise DomainError(f"{fn} is undefined at integer multiples of pi")
        return ctx.cos(x) / s if fn == "cot" else 1 / s
    raise ValueError(f"unknown elementary function {fn!r}")


# --------------------------------------------------------------------------
# decimal serialization


def to_decimal(x, digits: int) -> str:
    """Scientific-notation string with exactly ``digits`` significant digits."""
    ctx = _context(digits + 5)
    return ctx.nstr(ctx.mpf(x), digits, min_fixed=1, max_fixed=0, strip_zeros=False)


def from_decimal(text: str, p: Precision):
    return p.ctx.mpf(text.strip())


def serialize(x, digits: int) -> dict:
    return {"value": to_decimal(x, digits), "digits": digits}


def magnitude(x) -> str:
    """Short scientific rendering for residuals and bounds."""
    ctx = _context(20)
    x = ctx.mpf(x)
    if x == 0:
        return "0"
    return ctx.nstr(x, 3, min_fixed=1, max_fixed=0)
