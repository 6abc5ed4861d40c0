"""Named zeta identities built from central binomial sums.

Each entry pairs a left-hand evaluator with a right-hand evaluator. Sides
with a closed form in pi and trig functions that cancels to 0/0 at x = 0
are evaluated at extra precision near the origin (and at the limit value
for x = 0 itself).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .exact import bernoulli_even
from .mp import DivergenceError, Precision, const_pi, polylog, zeta_int
from .series import (
    SigmaSpec,
    SimplexSpec,
    alternating_sum,
    binomial_product_sum,
    dirichlet_sum,
    hyper_pfq,
    sigma_many,
    simplex_eval,
)


class PoleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Identity:
    name: str
    params: tuple
    lhs: Callable
    rhs: Callable
    summary: str


def _near_int(x, p: Precision) -> bool:
    ctx = p.ctx
    return abs(x - ctx.nint(x)) < ctx.mpf(10) ** (-p.dps // 2)


def _require_not_nonzero_int(x, p: Precision):
    if _near_int(x, p) and p.ctx.nint(x) != 0:
        raise PoleError(f"x = {p.ctx.nstr(x, 10)} is a nonzero integer")


def _require_not_int(x, p: Precision):
    if _near_int(x, p):
        raise PoleError(f"x = {p.ctx.nstr(x, 10)} is an integer")


def _boost(p: Precision, x, power: int) -> Precision:
    """Precision that survives cancellation of order |x|^power."""
    ctx = p.ctx
    lost = int(ctx.ceil(-power * ctx.log10(abs(x)))) if abs(x) < 1 else 0
    return p.raised(max(lost, 0) + 5)


def _frac(q, p):
    q = Fraction(q)
    return p.ctx.mpf(q.numerator) / q.denominator


# --------------------------------------------------------------------------
# constant identities


def _zeta(s):
    return lambda p: zeta_int(s, p)


def _z2_rhs(p):
    return 3 * sigma_many([SigmaSpec(1)], p)[0]


def _z3_rhs(p):
    return _frac("5/2", p) * alternating_sum(3, (), p)


def _z4_rhs(p):
    return _frac("36/17", p) * sigma_many([SigmaSpec(2)], p)[0]


def _z5_rhs(p):
    return 2 * alternating_sum(5, (), p) - _frac("5/2", p) * alternating_sum(3, (2,), p)


def _z7_rhs(p):
    return _frac("5/2", p) * alternating_sum(7, (), p) + _frac("25/2", p) * alternating_sum(3, (4,), p)


def _z9_rhs(p):
    return (_frac("9/4", p) * alternating_sum(9, (), p)
            - _frac("5/4", p) * alternating_sum(7, (2,), p)
            + 5 * alternating_sum(5, (4,), p)
            + _frac("45/4", p) * alternating_sum(3, (6,), p)
            - _frac("25/4", p) * alternating_sum(3, (4, 2), p))


def _z11_rhs(p):
    return (_frac("5/2", p) * alternating_sum(11, (), p)
            + _frac("25/2", p) * alternating_sum(7, (4,), p)
            - _frac("75/4", p) * alternating_sum(3, (8,), p)
            + _frac("125/4", p) * alternating_sum(3, (4, 4), p))


def _z0_lhs(p):
    return binomial_product_sum(p, lambda k: 1)


def _z0_rhs(p):
    ctx = p.ctx
    return (2 * ctx.pi * ctx.sqrt(3) + 9) / 27


def _z1_rhs(p):
    ctx = p.ctx
    s5 = ctx.sqrt(5)
    return 2 / s5 * ctx.log((s5 + 1) / 2)


def _z6_rhs(p):
    s6, s2_4 = sigma_many([SigmaSpec(3), SigmaSpec(1, (2,))], p)
    return _frac("288/163", p) * (s6 + _frac("3/2", p) * s2_4)


def _z8_rhs(p):
    s8, s4_4, s2_6 = sigma_many([SigmaSpec(4), SigmaSpec(2, (2,)), SigmaSpec(1, (3,))], p)
    return _frac("2304/1373", p) * (s8 + _frac("9/4", p) * s4_4 + _frac("3/2", p) * s2_6)


def _z10_rhs(p):
    s10, s6_4, s2_8, s4_6 = sigma_many(
        [SigmaSpec(5), SigmaSpec(3, (2,)), SigmaSpec(1, (4,)), SigmaSpec(2, (3,))], p)
    nested = simplex_eval(SimplexSpec(1, (4, 4)), p)
    return _frac("18432/11143", p) * (s10 + _frac("9/4", p) * s6_4 + _frac("3/2", p) * s2_8
                                      + _frac("9/4", p) * s4_6 + _frac("27/8", p) * nested)


def rho_ladder_rhs(p):
    """5/2 Li5(rho) - 5/2 Li4(rho) L + zeta(3) L^2 + zeta(2) L^3/3 - L^5/24, L = log rho.

    rho = (3 - sqrt5)/2. The zeta(2) term carries a plus sign; with a minus
    sign (and 2 zeta(5) minus the alternating sum on the left) the ladder is
    off by about 1.97.
    """
    ctx = p.ctx
    rho = (3 - ctx.sqrt(5)) / 2
    L = ctx.log(rho)
    return (_frac("5/2", p) * polylog(5, rho, p) - _frac("5/2", p) * polylog(4, rho, p) * L
            + zeta_int(3, p) * L**2 + zeta_int(2, p) * L**3 / 3 - L**5 / 24)


def _rho_lhs(p):
    return 2 * zeta_int(5, p) + alternating_sum(5, (), p)


# --------------------------------------------------------------------------
# generating functions in x (and y)


def _koecher_lhs(p, x):
    _require_not_nonzero_int(x, p)
    return dirichlet_sum(3, x * x, 0, p)


def _koecher_rhs(p, x):
    _require_not_nonzero_int(x, p)
    x2 = x * x
    return binomial_product_sum(
        p,
        term=lambda k: (5 * k * k - x2) / (k**3 * (k * k - x2)),
        factor=lambda m: 1 - x2 / (m * m),
        alternating=True,
    ) / 2


def _z43_lhs(p, x):
    _require_not_nonzero_int(x, p)
    return dirichlet_sum(3, 0, x**4, p)


def _z43_rhs(p, x):
    _require_not_nonzero_int(x, p)
    x4 = x**4
    return _frac("5/2", p) * binomial_product_sum(
        p,
        term=lambda k: 1 / (k**3 * (1 - x4 / k**4)),
        factor=lambda m: (1 + 4 * x4 / m**4) / (1 - x4 / m**4),
        alternating=True,
    )


def _hyper543_lhs(p, x):
    # 5F4 at unit argument: summed by mpmath's convergence acceleration
    _require_not_nonzero_int(x, p)
    ctx = p.ctx
    ix = ctx.mpc(0, 1) * x
    v = ctx.hyper([2, 1 + x, 1 - x, 1 + ix, 1 - ix], [2 + x, 2 - x, 2 + ix, 2 - ix], 1)
    return ctx.re(v)


def _hyper543_rhs(p, x):
    _require_not_nonzero_int(x, p)
    ctx = p.ctx
    ix = ctx.mpc(0, 1) * x
    v = hyper_pfq([2, 2, 1 + x + ix, 1 + x - ix, 1 - x + ix, 1 - x - ix],
                  [Fraction(3, 2), 2 + x, 2 - x, 2 + ix, 2 - ix], Fraction(-1, 4), p)
    return _frac("5/4", p) * ctx.re(v)


def _bradley_poles(p, x, y):
    # k^4 - x^2 k^2 - y^4 = 0 at k^2 = (x^2 + sqrt(x^4 + 4 y^4)) / 2
    ctx = p.ctx
    k2 = (x * x + ctx.sqrt(x**4 + 4 * y**4)) / 2
    if k2 > 0 and _near_int(ctx.sqrt(k2), p) and ctx.nint(ctx.sqrt(k2)) >= 1:
        raise PoleError("k^4 - x^2 k^2 - y^4 vanishes at an integer k")


def _bradley_lhs(p, x, y):
    _bradley_poles(p, x, y)
    return dirichlet_sum(3, x * x, y**4, p)


def _bradley_rhs(p, x, y):
    _bradley_poles(p, x, y)
    x2, y4 = x * x, y**4
    return binomial_product_sum(
        p,
        term=lambda k: (5 * k * k - x2) / (k * (k**4 - x2 * k * k - y4)),
        factor=lambda m: ((m * m - x2) ** 2 + 4 * y4) / (m**4 - x2 * m * m - y4),
        alternating=True,
    ) / 2


def _apery2_lhs(p, x):
    _require_not_nonzero_int(x, p)
    return dirichlet_sum(2, x * x, 0, p)


def zeta2_rhs(p, x):
    """Z(x) = 3 sum 1/(C(2k,k)(k^2-x^2)) prod_{m<k} (4x^2-m^2)/(x^2-m^2)."""
    _require_not_nonzero_int(x, p)
    x2 = x * x
    return 3 * binomial_product_sum(
        p,
        term=lambda k: 1 / (k * k - x2),
        factor=lambda m: (m * m - 4 * x2) / (m * m - x2),
    )


def apery22_closed(p, x):
    """(1 - pi x cot(pi x)) / (2x^2), the generating function of zeta(2n+2)."""
    _require_not_nonzero_int(x, p)
    if x == 0:
        return zeta_int(2, p)
    q = _boost(p, x, 2)
    ctx = q.ctx
    xx = ctx.mpf(x)
    pix = ctx.pi * xx
    v = (1 - pix * ctx.cos(pix) / ctx.sin(pix)) / (2 * xx * xx)
    return p.ctx.mpf(v)


def _apery22_lhs(p, x):
    ctx = p.ctx
    if abs(x) >= 1:
        raise DivergenceError("sum zeta(2n+2) x^2n needs |x| < 1")
    x2 = x * x
    tol = ctx.mpf(10) ** (-p.dps - 2)
    total = ctx.mpf(0)
    w = ctx.mpf(1)
    n = 0
    while True:
        term = zeta_int(2 * n + 2, p) * w
        total += term
        # zeta decreases to 1, so the rest is below w x^2 zeta(2n+4) / (1 - x^2)
        if abs(w) * x2 * 2 / (1 - x2) < tol:
            return total
        w *= x2
        n += 1


def _lesh_lhs(p, x):
    _require_not_nonzero_int(x, p)
    x2 = x * x
    return binomial_product_sum(
        p,
        term=lambda k: (3 * k * k + x2) / (k * k * (k * k - x2)),
        factor=lambda m: 1 - x2 / (m * m),
    ) / 2


def _lesh_rhs(p, x):
    if x == 0:
        return zeta_int(2, p) / 2  # pi^2/12
    _require_not_int(x, p)
    q = _boost(p, x, 2)
    ctx = q.ctx
    xx = ctx.mpf(x)
    v = ctx.pi / (2 * xx * ctx.sin(ctx.pi * xx)) - 1 / (2 * xx * xx)
    return p.ctx.mpf(v)


def w_sum(p, x):
    """W(x) = sum 1/(k^2 C(2k,k)(k^2-x^2)) prod_{m<k}(1 - x^2/m^2)."""
    _require_not_nonzero_int(x, p)
    x2 = x * x
    return binomial_product_sum(
        p,
        term=lambda k: 1 / (k * k * (k * k - x2)),
        factor=lambda m: 1 - x2 / (m * m),
    )


def v_sum(p, x):
    """V(x) = sum 1/(k^2 C(2k,k)) prod_{m<k}(1 - x^2/m^2)."""
    x2 = x * x
    ctx = p.ctx
    return binomial_product_sum(p, term=lambda k: 1 / ctx.mpf(k * k),
                                factor=lambda m: 1 - x2 / (m * m))


def v_closed(p, x):
    """(1 - cos(pi x / 3)) / x^2, with the x = 0 limit pi^2/18."""
    if x == 0:
        return const_pi(p) ** 2 / 18
    q = _boost(p, x, 2)
    ctx = q.ctx
    xx = ctx.mpf(x)
    return p.ctx.mpf((1 - ctx.cos(ctx.pi * xx / 3)) / (xx * xx))


def _apery4_rhs(p, x):
    if x == 0:
        return _frac("17/36", p) * zeta_int(4, p)
    _require_not_int(x, p)
    q = _boost(p, x, 4)
    ctx = q.ctx
    xx = ctx.mpf(x)
    v = (ctx.pi / (4 * xx**3 * ctx.sin(ctx.pi * xx)) - 1 / xx**4
         + 3 * ctx.cos(ctx.pi * xx / 3) / (4 * xx**4))
    return p.ctx.mpf(v)


def _zeta4_rhs(p, x):
    if x == 0:
        return _frac("17/36", p) * zeta_int(4, p)
    _require_not_int(x, p)
    q = _boost(p, x, 4)
    ctx = q.ctx
    xx = ctx.mpf(x)
    pix = ctx.pi * xx
    v = (pix / ctx.sin(pix) + 3 * ctx.cos(pix / 3) - 4) / (4 * xx**4)
    return p.ctx.mpf(v)


def zeta4_maclaurin_rational(count: int) -> list[Fraction]:
    """q_n with [x^(2n-4)] of (pi x csc(pi x) + 3 cos(pi x/3) - 4)/(4x^4) = q_n pi^(2n).

    Obtained by inverting the sine series exactly; returns q_2 .. q_{count+1}.
    """
    top = count + 1
    sinc = [Fraction((-1) ** j, math.factorial(2 * j + 1)) for j in range(top + 1)]
    csc = [Fraction(1)]  # t / sin t in powers of t^2
    for i in range(1, top + 1):
        csc.append(-sum((sinc[j] * csc[i - j] for j in range(1, i + 1)), Fraction(0)))
    out = []
    for n in range(2, top + 1):
        cos_part = Fraction(3 * (-1) ** n, 9**n * math.factorial(2 * n))
        out.append((csc[n] + cos_part) / 4)
    return out


def zeta4_maclaurin_bernoulli(n: int) -> Fraction:
    """(-1)^n {3^(1-2n) - 2 B_2n (2^(2n-1) - 1)} / (4 (2n)!), the pi^(2n) multiplier."""
    b = bernoulli_even(n)
    return (-1) ** n * (Fraction(1, 3 ** (2 * n - 1)) - 2 * b * (2 ** (2 * n - 1) - 1)) / (
        4 * math.factorial(2 * n))


# --------------------------------------------------------------------------


def _const(lhs, rhs, summary):
    return dict(params=(), lhs=lhs, rhs=rhs, summary=summary)


_ENTRIES = {
    "z2": _const(_zeta(2), _z2_rhs, "zeta(2) = 3 sigma(2;[])"),
    "z3": _const(_zeta(3), _z3_rhs, "zeta(3) = 5/2 sum (-1)^(k+1)/(k^3 C(2k,k))"),
    "z4": _const(_zeta(4), _z4_rhs, "zeta(4) = 36/17 sigma(4;[])"),
    "z5": _const(_zeta(5), _z5_rhs, "zeta(5) from alternating sums with inner j^-2"),
    "z7": _const(_zeta(7), _z7_rhs, "zeta(7) from alternating sums with inner j^-4"),
    "z9": _const(_zeta(9), _z9_rhs, "zeta(9) five-term alternating formula"),
    "z11": _const(_zeta(11), _z11_rhs, "zeta(11) four-term alternating formula"),
    "koecher": dict(params=("x",), lhs=_koecher_lhs, rhs=_koecher_rhs,
                    summary="sum 1/(k(k^2-x^2)) generating zeta(2n+3)"),
    "z43": dict(params=("x",), lhs=_z43_lhs, rhs=_z43_rhs,
                summary="sum 1/(k^3(1-x^4/k^4)) generating zeta(4n+3)"),
    "hyper543": dict(params=("x",), lhs=_hyper543_lhs, rhs=_hyper543_rhs,
                     summary="5F4(..|1) = 5/4 6F5(..|-1/4), hypergeometric form of z43"),
    "bradley": dict(params=("x", "y"), lhs=_bradley_lhs, rhs=_bradley_rhs,
                    summary="sum k/(k^4-x^2k^2-y^4), bivariate generating function"),
    "apery2": dict(params=("x",), lhs=_apery2_lhs, rhs=zeta2_rhs,
                   summary="sum 1/(k^2-x^2) generating zeta(2n+2)"),
    "apery22": dict(params=("x",), lhs=_apery22_lhs, rhs=apery22_closed,
                    summary="sum zeta(2n+2) x^2n = (1 - pi x cot(pi x))/(2x^2)"),
    "lesh": dict(params=("x",), lhs=_lesh_lhs, rhs=_lesh_rhs,
                 summary="Leshchiner: pi/(2x sin(pi x)) - 1/(2x^2)"),
    "apery4": dict(params=("x",), lhs=w_sum, rhs=_apery4_rhs,
                   summary="W(x) = pi/(4x^3 sin(pi x)) - 1/x^4 + 3cos(pi x/3)/(4x^4)"),
    "zeta4": dict(params=("x",), lhs=w_sum, rhs=_zeta4_rhs,
                  summary="W(x) = (pi x csc(pi x) + 3cos(pi x/3) - 4)/(4x^4), seed 17/36 zeta(4)"),
    "rho": _const(_rho_lhs, rho_ladder_rhs, "golden-ratio polylog ladder for 2zeta(5) + sum (-1)^(k+1)/(k^5 C(2k,k))"),
    "z0": _const(_z0_lhs, _z0_rhs, "sum 1/C(2k,k) = (2 pi sqrt3 + 9)/27"),
    "z1": _const(lambda p: alternating_sum(1, (), p), _z1_rhs,
                 "sum (-1)^(k+1)/(k C(2k,k)) = 2/sqrt5 log((sqrt5+1)/2)"),
    "z6": _const(_zeta(6), _z6_rhs, "zeta(6) = 288/163 [sigma(6;[]) + 3/2 sigma(2;[4])]"),
    "z8": _const(_zeta(8), _z8_rhs, "zeta(8) = 2304/1373 [...]"),
    "z10": _const(_zeta(10), _z10_rhs, "zeta(10) = 18432/11143 [... + 27/8 simplex(2;[4,4])]"),
}

IDENTITIES: dict[str, Identity] = {name: Identity(name=name, **e) for name, e in _ENTRIES.items()}


def identity_eval(name: str, params, p: Precision):
    """Evaluate both sides of a catalog identity; returns (lhs, rhs)."""
    try:
        ident = IDENTITIES[name]
    except KeyError:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(IDENTITIES)}") from None
    params = list(params)
    if len(params) != len(ident.params):
        raise ValueError(f"{name} takes parameters {ident.params}, got {len(params)}")
    args = [p.mpf(v) for v in params]
    return ident.lhs(p, *args), ident.rhs(p, *args)
