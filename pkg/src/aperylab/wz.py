"""Exact checks of the finite identities behind the zeta(2n+2) generating function.

All values are Fractions; "= 1" and "= 0" below are literal equalities.
The hypergeometric term is built from Pochhammer products, so factorials
of negative integers never appear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact import binomial, pochhammer

_HALF = Fraction(1, 2)


class CertificatePole(ZeroDivisionError):
    def __init__(self, n: int, k: int):
        super().__init__(f"certificate R(n,k) has a pole at (n,k)=({n},{k})")
        self.n = n
        self.k = k


@dataclass(frozen=True)
class HyperTerm:
    """f(n,k) = (3n)_k (n+1)_k (-n)_k / ((2n+1)_k (n+1/2)_k) * 4^-k / k!."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError("HyperTerm needs n, k >= 0")

    def value(self) -> Fraction:
        return hyper_term(self.n, self.k)


@lru_cache(maxsize=None)
def hyper_term(n: int, k: int, drop_last_neg: bool = False) -> Fraction:
    """f(n,k); with ``drop_last_neg`` the factor (-n)_k becomes (-n)_(k-1)."""
    neg = pochhammer(-n, k - 1) if drop_last_neg else pochhammer(-n, k)
    num = pochhammer(3 * n, k) * pochhammer(n + 1, k) * neg
    if not num:
        return Fraction(0)
    den = pochhammer(2 * n + 1, k) * pochhammer(n + _HALF, k) * 4**k * math.factorial(k)
    return num / den


def r_value(n: int) -> Fraction:
    return Fraction(binomial(2 * n, n), binomial(3 * n, n))


def finite2_check(n: int) -> Fraction:
    """3F2(3n, n+1, -n; 2n+1, n+1/2 | 1/4), summed exactly (terminates at k = n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return sum((hyper_term(n, k) for k in range(n + 1)), Fraction(0))


def t_check(n: int) -> Fraction:
    """T(n) = (3n)! n! / ((2n)!)^2 * 3F2(...); equals 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    pre = Fraction(math.factorial(3 * n) * math.factorial(n), math.factorial(2 * n) ** 2)
    return pre * finite2_check(n)


# --------------------------------------------------------------------------
# WZ pair


def certificate(n: int, k: int) -> Fraction:
    """R(n,k) = -k (11n^2 + 1 + 6n + k + 5kn) / (3 (n-k+1)(2n+k+1) n)."""
    den = 3 * (n - k + 1) * (2 * n + k + 1) * n
    if den == 0:
        raise CertificatePole(n, k)
    return Fraction(-k * (11 * n * n + 1 + 6 * n + k + 5 * k * n), den)


def F(n: int, k: int) -> Fraction:
    return hyper_term(n, k) / r_value(n)


def G(n: int, k: int) -> Fraction:
    """G = R F, strictly (raises at poles of R)."""
    return certificate(n, k) * F(n, k)


def G_limit(n: int, k: int) -> Fraction:
    """G with the removable singularity cancelled.

    (-n)_k = -(n-k+1) (-n)_(k-1), so R F loses the (n-k+1) factor:
    G = k (11n^2+1+6n+k+5kn) / (3(2n+k+1)n) * f*(n,k) / r(n), where f*
    carries (-n)_(k-1) in place of (-n)_k.
    """
    if k == 0:
        return Fraction(0)
    c = Fraction(k * (11 * n * n + 1 + 6 * n + k + 5 * k * n), 3 * (2 * n + k + 1) * n)
    return c * hyper_term(n, k, True) / r_value(n)


def wz_certificate_check(n: int, k: int) -> Fraction:
    """[F(n+1,k) - F(n,k)] - [G(n,k+1) - G(n,k)], exactly; raises CertificatePole."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return (F(n + 1, k) - F(n, k)) - (G(n, k + 1) - G(n, k))


def wz_residual_limit(n: int, k: int) -> Fraction:
    """Same residual using the pole-free form of G."""
    return (F(n + 1, k) - F(n, k)) - (G_limit(n, k + 1) - G_limit(n, k))


@dataclass
class WZReport:
    n_max: int
    checked: int = 0
    failures: list = field(default_factory=list)
    poles: list = field(default_factory=list)  # (n, k) where R itself is undefined

    @property
    def ok(self) -> bool:
        return not self.failures


def wz_batch(n_max: int) -> WZReport:
    """Check k = 0..n+1 for n = 1..n_max.

    Points where R is undefined are logged in ``poles`` and checked with the
    pole-free G instead, so the full support is covered.
    """
    rep = WZReport(n_max)
    for n in range(1, n_max + 1):
        for k in range(0, n + 2):
            try:
                res = wz_certificate_check(n, k)
            except CertificatePole:
                rep.poles.append((n, k))
                res = wz_residual_limit(n, k)
            rep.checked += 1
            if res != 0:
                rep.failures.append((n, k, res))
    return rep


# --------------------------------------------------------------------------
# partial fractions


def c_coefficient(n: int, k: int) -> Fraction:
    """c_n(k) = prod_{m<k}(1-4n^2/m^2) / prod_{m<=k, m!=n}(1-n^2/m^2); 0 for n > k."""
    if n < 1 or k < 1:
        raise ValueError("n, k must be >= 1")
    if n > k:
        return Fraction(0)
    num = Fraction(1)
    for m in range(1, k):
        num *= 1 - Fraction(4 * n * n, m * m)
        if not num:
            return num
    den = Fraction(1)
    for m in range(1, k + 1):
        if m != n:
            den *= 1 - Fraction(n * n, m * m)
    return num / den


def partial_fraction_check(n: int, k: int | None = None) -> Fraction:
    """c_n(k) when k is given; otherwise 3 sum_{k=n}^{2n} c_n(k)/(k^2 C(2k,k)) (= 1/n^2)."""
    if k is not None:
        return c_coefficient(n, k)
    return 3 * sum((c_coefficient(n, kk) / (kk * kk * binomial(2 * kk, kk))
                    for kk in range(n, 2 * n + 1)), Fraction(0))


def s_value(n: int) -> Fraction:
    """S_n = sum_{k=n}^{2n} 3/C(2k,k) prod_{m<k}(4n^2-m^2) / prod_{m<=k,m!=n}(n^2-m^2); equals 1."""
    total = Fraction(0)
    for k in range(n, 2 * n + 1):
        num = 1
        for m in range(1, k):
            num *= 4 * n * n - m * m
        den = 1
        for m in range(1, k + 1):
            if m != n:
                den *= n * n - m * m
        total += Fraction(3 * num, binomial(2 * k, k) * den)
    return total


def partial_fraction_sides(k: int, z) -> tuple[Fraction, Fraction]:
    """Both sides of the decomposition
    1/(1-z^2/k^2) prod_{m<k} (1-4z^2/m^2)/(1-z^2/m^2) = sum_{n<=k} c_n(k)/(1-z^2/n^2)."""
    z2 = Fraction(z) ** 2
    lhs = 1 / (1 - z2 / (k * k))
    for m in range(1, k):
        lhs *= (1 - 4 * z2 / (m * m)) / (1 - z2 / (m * m))
    rhs = sum((c_coefficient(n, k) / (1 - z2 / (n * n)) for n in range(1, k + 1)), Fraction(0))
    return lhs, rhs


# --------------------------------------------------------------------------


def finite3_check(n: int) -> Fraction:
    """sum_k 2n^2/k^2 prod_{i<n}(4k^4+i^4) / prod_{i<=n, i!=k}(k^4-i^4); equals C(2n,n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    for k in range(1, n + 1):
        k4 = k**4
        num = 2 * n * n
        for i in range(1, n):
            num *= 4 * k4 + i**4
        den = k * k
        for i in range(1, n + 1):
            if i != k:
                den *= k4 - i**4
        total += Fraction(num, den)
    return total


def prove_report(n_max: int) -> dict:
    """Every exact check up to n_max; ``ok`` is True iff all pass."""
    out: dict = {"n_max": n_max}
    t_fail = [n for n in range(1, n_max + 1) if t_check(n) != 1]
    f2_fail = [n for n in range(0, n_max + 1) if finite2_check(n) != r_value(n)]
    s_fail = [n for n in range(1, n_max + 1) if s_value(n) != 1
              or partial_fraction_check(n) != Fraction(1, n * n)]
    f3_fail = [n for n in range(1, n_max + 1) if finite3_check(n) != binomial(2 * n, n)]
    wz = wz_batch(n_max)
    out["t"] = {"checked": n_max, "failures": t_fail}
    out["finite2"] = {"checked": n_max + 1, "failures": f2_fail}
    out["partial_fractions"] = {"checked": n_max, "failures": s_fail}
    out["finite3"] = {"checked": n_max, "failures": f3_fail}
    out["wz"] = {"checked": wz.checked, "failures": [[n, k, str(r)] for n, k, r in wz.failures],
                 "poles": [list(pk) for pk in wz.poles]}
    out["ok"] = not (t_fail or f2_fail or s_fail or f3_fail or wz.failures)
    first = None
    if wz.failures:
        first = {"check": "wz", "n": wz.failures[0][0], "k": wz.failures[0][1]}
    for name, fails in (("t", t_fail), ("finite2", f2_fail), ("partial_fractions", s_fail),
                        ("finite3", f3_fail)):
        if fails and first is None:
            first = {"check": name, "n": fails[0]}
    out["first_failure"] = first
    return out
