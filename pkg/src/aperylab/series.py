"""Evaluators for central binomial sums and their relatives.

Binomial-weighted sums decay like 4^-k, so every one of them is truncated
after :func:`truncation_terms` terms. Dirichlet-type sums such as
sum 1/(k^2 - x^2) are summed directly up to a cutoff and the remainder is
expanded in Hurwitz zeta tails.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exact import Partition, partitions_of
from .mp import DivergenceError, Precision, hurwitz_tail


class MissingAlphaError(KeyError):
    pass


def truncation_terms(p: Precision) -> int:
    # terms shrink by a factor of ~4 per step; the +10 absorbs the polynomial
    # growth of inner harmonic factors
    return math.ceil(p.dps / math.log10(4)) + 10


# --------------------------------------------------------------------------
# sigma (hypercube) and simplex sums


@dataclass(frozen=True)
class SigmaSpec:
    """sigma(2r; [2a_1, ..., 2a_N]); ``parts`` holds the a_i."""

    r: int
    parts: Partition = ()

    def __post_init__(self):
        if self.r < 1 or any(a < 1 for a in self.parts):
            raise ValueError(f"invalid sigma spec r={self.r} parts={self.parts}")
        object.__setattr__(self, "parts", tuple(sorted(self.parts, reverse=True)))

    @property
    def weight(self) -> int:
        return self.r + sum(self.parts)

    def __str__(self):
        inner = ",".join(str(2 * a) for a in self.parts)
        return f"sigma({2 * self.r};[{inner}])"


@dataclass(frozen=True)
class SimplexSpec:
    """sum_k 1/(k^{2r} C(2k,k)) sum_{j1<k} j1^-b1 sum_{j2<j1} j2^-b2 ...

    ``chain`` holds the actual (even) exponents b_1, b_2, ...
    """

    r: int
    chain: tuple = ()

    def __post_init__(self):
        if self.r < 1 or any(b < 2 or b % 2 for b in self.chain):
            raise ValueError(f"invalid simplex spec r={self.r} chain={self.chain}")
        object.__setattr__(self, "chain", tuple(self.chain))

    def __str__(self):
        return f"simplex({2 * self.r};[{','.join(map(str, self.chain))}])"


_SPEC_RE = re.compile(r"^\s*(sigma|simplex)\s*\(\s*(\d+)\s*;\s*\[([\d,\s]*)\]\s*\)\s*$")


def parse_spec(text: str):
    """Parse ``sigma(2r;[2a1,...])`` or ``simplex(2r;[b1,...])``."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse sum spec {text!r}")
    kind, outer, body = m.group(1), int(m.group(2)), m.group(3)
    exps = [int(e) for e in body.split(",") if e.strip()]
    exps = [e for e in exps if e != 0]  # "[0]" is the empty partition
    if outer % 2 or any(e % 2 for e in exps):
        raise ValueError(f"exponents must be even in {text!r}")
    if kind == "sigma":
        return SigmaSpec(outer // 2, tuple(e // 2 for e in exps))
    return SimplexSpec(outer // 2, tuple(exps))


def sigma_many(specs: Sequence[SigmaSpec], p: Precision, extra_terms: int = 0) -> list:
    """Evaluate several sigma sums in a single pass over k."""
    ctx = p.ctx
    K = truncation_terms(p) + extra_terms
    exps = sorted({2 * a for s in specs for a in s.parts})
    max_r = max((s.r for s in specs), default=1)
    harm = {e: ctx.mpf(0) for e in exps}  # sum_{n<k} n^-e
    totals = [ctx.mpf(0) for _ in specs]
    inv_binom = ctx.mpf(1)
    for k in range(1, K + 1):
        inv_binom = inv_binom * k / (2 * (2 * k - 1))
        inv_k2 = 1 / ctx.mpf(k * k)
        base = [inv_binom * inv_k2]
        for _ in range(max_r - 1):
            base.append(base[-1] * inv_k2)
        for i, s in enumerate(specs):
            t = base[s.r - 1]
            for a in s.parts:
                t *= harm[2 * a]
            totals[i] += t
        if exps:
            pw = inv_k2
            e = 2
            for target in exps:
                while e < target:
                    pw *= inv_k2
                    e += 2
                harm[target] += pw
    return totals


def sigma_eval(spec: SigmaSpec, p: Precision, extra_terms: int = 0):
    return sigma_many([spec], p, extra_terms)[0]


def simplex_eval(spec: SimplexSpec, p: Precision, extra_terms: int = 0):
    ctx = p.ctx
    K = truncation_terms(p) + extra_terms
    depth = len(spec.chain)
    levels = [ctx.mpf(0)] * depth + [ctx.mpf(1)]  # levels[l] = S_{l+1}(t); last is 1
    total = ctx.mpf(0)
    inv_binom = ctx.mpf(1)
    for k in range(1, K + 1):
        inv_binom = inv_binom * k / (2 * (2 * k - 1))
        total += inv_binom / ctx.mpf(k) ** (2 * spec.r) * levels[0]
        # outermost first, so each level still sees the deeper level at index k
        for l, b in enumerate(spec.chain):
            levels[l] += levels[l + 1] / ctx.mpf(k) ** b
    return total


def alternating_sum(p_exp: int, inner: Sequence[int] = (), p: Precision | None = None,
                    extra_terms: int = 0):
    """sum (-1)^(k+1) / (k^p_exp C(2k,k)) * prod_i sum_{j<k} j^-inner_i.

    ``inner`` lists the actual exponents of the independent inner sums.
    """
    if p_exp < 1:
        raise ValueError("p_exp must be >= 1")
    ctx = p.ctx
    K = truncation_terms(p) + extra_terms
    harm = {e: ctx.mpf(0) for e in set(inner)}
    total = ctx.mpf(0)
    inv_binom = ctx.mpf(1)
    for k in range(1, K + 1):
        inv_binom = inv_binom * k / (2 * (2 * k - 1))
        t = inv_binom / ctx.mpf(k) ** p_exp
        for e in inner:
            t *= harm[e]
        total += t if k % 2 else -t
        for e in harm:
            harm[e] += 1 / ctx.mpf(k) ** e
    return total


def binomial_product_sum(p: Precision, term: Callable, factor: Callable | None = None,
                         alternating: bool = False, extra_terms: int = 0):
    """sum_k (+-1)^(k+1) term(k) prod_{m<k} factor(m) / C(2k,k).

    The product is carried across k, one factor per step.
    """
    ctx = p.ctx
    K = truncation_terms(p) + extra_terms
    total = ctx.mpf(0)
    prod = ctx.mpf(1)
    inv_binom = ctx.mpf(1)
    for k in range(1, K + 1):
        inv_binom = inv_binom * k / (2 * (2 * k - 1))
        t = term(k) * prod * inv_binom
        total += -t if (alternating and k % 2 == 0) else t
        if factor is not None:
            prod *= factor(k)
    return total


def dirichlet_sum(s0: int, a, b, p: Precision, cutoff: int | None = None):
    """sum_{k>=1} k^-s0 / (1 - a/k^2 - b/k^4) for real a, b.

    Terms with k <= cutoff are added directly; beyond it the summand is
    expanded as sum_n e_n k^-(s0+2n) with e_n = a e_{n-1} + b e_{n-2} and the
    pieces are summed with Hurwitz tails. The e_n can be huge, so the tails
    need relative (not absolute) accuracy.
    """
    ctx = p.ctx
    a, b = ctx.mpf(a), ctx.mpf(b)
    growth = abs(a) + ctx.sqrt(abs(b))  # bounds the root ratio of the e_n recurrence
    if cutoff is None:
        cutoff = max(40, int(ctx.ceil(10 * ctx.sqrt(growth))) + 10)
    tiny = ctx.mpf(10) ** (-p.dps // 2)
    head = ctx.mpf(0)
    for k in range(1, cutoff + 1):
        k2 = ctx.mpf(k * k)
        den = 1 - a / k2 - b / (k2 * k2)
        if abs(den) < tiny:
            raise ZeroDivisionError(f"dirichlet sum has a pole at k={k}")
        head += 1 / (ctx.mpf(k) ** s0 * den)
    tol = ctx.mpf(10) ** (-p.dps - 2)
    tail = ctx.mpf(0)
    e_prev, e_cur = ctx.mpf(0), ctx.mpf(1)
    n = 0
    N = ctx.mpf(cutoff)
    while True:
        s = s0 + 2 * n
        piece = e_cur * hurwitz_tail(s, cutoff, p)
        tail += piece
        # e_n can vanish for odd n when a = 0, so bound by the last two
        if (abs(e_cur) + abs(e_prev)) * N ** (1 - s) < tol and n > 2:
            break
        e_prev, e_cur = e_cur, a * e_cur + b * e_prev
        n += 1
        if n > 20 * p.dps:
            raise DivergenceError("Hurwitz tail expansion did not converge")
    return head + tail


# --------------------------------------------------------------------------
# generalized hypergeometric series


def _is_nonpos_int(v) -> bool:
    return isinstance(v, (int, Fraction)) and Fraction(v).denominator == 1 and v <= 0


def hyper_pfq(upper: Sequence, lower: Sequence, z, p: Precision | None = None,
              max_terms: int | None = None):
    """sum_k prod (upper)_k / prod (lower)_k * z^k / k!.

    With rational parameters and argument and a terminating series the sum
    is returned exactly as a Fraction. Otherwise it is summed numerically
    (complex parameters allowed) and a real result is returned when the
    imaginary part vanishes.
    """
    if any(_is_nonpos_int(b) for b in lower):
        # allowed only if the series terminates before hitting the zero
        stop = min(-int(b) for b in lower if _is_nonpos_int(b))
        term_stop = min((-int(a) for a in upper if _is_nonpos_int(a)), default=None)
        if term_stop is None or term_stop > stop:
            raise ZeroDivisionError("lower parameter hits a nonpositive integer")
    exact = all(isinstance(v, (int, Fraction)) for v in (*upper, *lower, z))
    terminating = [int(-Fraction(a)) for a in upper if _is_nonpos_int(a)]
    if exact and terminating:
        n = min(terminating)
        total = Fraction(0)
        term = Fraction(1)
        z = Fraction(z)
        for k in range(n + 1):
            total += term
            if k == n:
                break
            num = Fraction(1)
            for a in upper:
                num *= Fraction(a) + k
            den = Fraction(k + 1)
            for b in lower:
                den *= Fraction(b) + k
            term = term * num * z / den
        return total
    if p is None:
        raise ValueError("a precision is required for non-terminating series")
    ctx = p.ctx

    def conv(v):
        if isinstance(v, Fraction):
            return ctx.mpf(v.numerator) / v.denominator
        return ctx.convert(v)

    up = [conv(a) for a in upper]
    lo = [conv(b) for b in lower]
    zz = conv(z)
    if not terminating and len(upper) > len(lower) + 1:
        raise DivergenceError("pFq with p > q+1 diverges")
    if not terminating and len(upper) == len(lower) + 1 and abs(zz) >= 1:
        raise DivergenceError("pFq with p = q+1 needs |z| < 1 for plain summation")
    if max_terms is None:
        max_terms = 50 * p.dps + 1000
    tol = ctx.mpf(10) ** (-p.dps - 2)
    total = ctx.mpf(0)
    term = ctx.mpf(1)
    small_run = 0
    for k in range(max_terms):
        total += term
        if term == 0:
            break
        num = ctx.mpf(1)
        for a in up:
            num *= a + k
        den = ctx.mpf(k + 1)
        for b in lo:
            den *= b + k
        ratio = num * zz / den
        term = term * ratio
        # stop once the terms are tiny and shrinking geometrically
        if abs(term) < tol * max(abs(total), 1) and abs(ratio) < 0.9:
            small_run += 1
            if small_run >= 3:
                total += term
                break
        else:
            small_run = 0
    else:
        raise DivergenceError(f"pFq did not converge in {max_terms} terms")
    if isinstance(total, ctx.mpc):
        if abs(total.imag) <= tol * max(abs(total.real), 1) * 100:
            return total.real
    return total


# --------------------------------------------------------------------------
# P_k(x) series in u = x^2


def sigma_hat(parts: Partition, k: int) -> Fraction:
    """prod_i sum_{n<k} n^(-2 a_i), exactly."""
    out = Fraction(1)
    for a in parts:
        out *= sum((Fraction(1, n ** (2 * a)) for n in range(1, k)), Fraction(0))
    return out


def pk_series(alphas: Mapping[Partition, Fraction], k: int, order: int) -> list[Fraction]:
    """Coefficients of u^0..u^order of P_k = sum_m u^m sum_{pi in Pi(m)} alpha(pi) sigma_hat_k(pi)."""
    if k < 1:
        raise ValueError("k must be positive")
    harm: dict[int, Fraction] = {}

    def h(e):
        if e not in harm:
            harm[e] = sum((Fraction(1, n**e) for n in range(1, k)), Fraction(0))
        return harm[e]

    out = []
    for m in range(order + 1):
        c = Fraction(0)
        for part in partitions_of(m):
            if part not in alphas:
                raise MissingAlphaError(f"no alpha for partition {list(part)} (weight {m})")
            sh = Fraction(1)
            for a in part:
                sh *= h(2 * a)
            c += Fraction(alphas[part]) * sh
        out.append(c)
    return out


# --------------------------------------------------------------------------
# power series (in u) of binomial sums whose k-th term is rational in u


def _mul_linear(s: list, c0, c1) -> None:
    """s *= (c0 + c1 u), in place, truncated."""
    for j in range(len(s) - 1, 0, -1):
        s[j] = s[j] * c0 + s[j - 1] * c1
    s[0] = s[0] * c0


def _div_linear(s: list, c0, c1) -> None:
    """s /= (c0 + c1 u), in place, truncated (c0 != 0)."""
    r = -c1 / c0
    s[0] = s[0] / c0
    for j in range(1, len(s)):
        s[j] = s[j] / c0 + r * s[j - 1]


def binomial_sum_series(p: Precision, order: int, prefactor: Callable,
                        k_linear: Callable, m_num: Callable | None = None,
                        m_den: Callable | None = None, extra_terms: int = 0) -> list:
    """Maclaurin coefficients (u^0..u^order) of

        sum_k prefactor(k) / (C(2k,k) * L_k(u)) * prod_{m<k} N_m(u) / D_m(u)

    where ``k_linear(k)``, ``m_num(m)``, ``m_den(m)`` return (c0, c1) for the
    linear polynomials c0 + c1 u.
    """
    ctx = p.ctx
    n = order + 1
    K = truncation_terms(p) + extra_terms
    prod = [ctx.mpf(1)] + [ctx.mpf(0)] * order
    total = [ctx.mpf(0)] * n
    inv_binom = ctx.mpf(1)
    for k in range(1, K + 1):
        inv_binom = inv_binom * k / (2 * (2 * k - 1))
        term = list(prod)
        c0, c1 = k_linear(k)
        _div_linear(term, ctx.mpf(c0), ctx.mpf(c1))
        w = prefactor(k) * inv_binom
        for j in range(n):
            total[j] += w * term[j]
        if m_num is not None:
            _mul_linear(prod, *map(ctx.mpf, m_num(k)))
        if m_den is not None:
            _div_linear(prod, *map(ctx.mpf, m_den(k)))
    return total


def zeta2_rhs_series(order: int, p: Precision) -> list:
    """Coefficients of 3 sum_k 1/(C(2k,k)(k^2-u)) prod_{m<k} (m^2-4u)/(m^2-u)."""
    return binomial_sum_series(
        p, order,
        prefactor=lambda k: 3,
        k_linear=lambda k: (k * k, -1),
        m_num=lambda m: (m * m, -4),
        m_den=lambda m: (m * m, -1),
    )


def w_series(order: int, p: Precision) -> list:
    """Coefficients of W(u) = sum_k 1/(k^2 C(2k,k)(k^2-u)) prod_{m<k} (1-u/m^2)."""
    ctx = p.ctx
    return binomial_sum_series(
        p, order,
        prefactor=lambda k: 1 / ctx.mpf(k * k),
        k_linear=lambda k: (k * k, -1),
        m_num=lambda m: (1, -1 / ctx.mpf(m * m)),
    )
