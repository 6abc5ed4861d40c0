import math
from fractions import Fraction

import mpmath
import pytest

from aperylab.exact import partitions_of, pochhammer
from aperylab.mp import DivergenceError, Precision, zeta_int
from aperylab.series import (
    MissingAlphaError,
    SigmaSpec,
    SimplexSpec,
    alternating_sum,
    binomial_product_sum,
    dirichlet_sum,
    hurwitz_tail,
    hyper_pfq,
    parse_spec,
    pk_series,
    sigma_eval,
    sigma_hat,
    sigma_many,
    simplex_eval,
    truncation_terms,
    w_series,
    zeta2_rhs_series,
)
from oracles import alpha_closed, brute_sigma, brute_simplex, mp_context
from table1_data import TABLE1

TABLE = {part: Fraction(v) for part, v in TABLE1}

# [oracle] 60-digit values from brute_sigma / brute_simplex at 80 dps, 200 terms, frozen
FROZEN = {
    SigmaSpec(2): "0.511097082585815257104779523366662620754743505072732150850294",
    SigmaSpec(1, (1,)): "0.050107557116256397755370541506535551054386618144385504985323",
    SigmaSpec(1, (2, 1)): "0.0506547837927462040099040850472502862833988393015783216602663",
}
FROZEN_SIMPLEX_2_44 = "0.000430475453682953949051948415250701859165735432283433830210517"


def test_truncation_grows_with_precision():
    assert truncation_terms(Precision(200)) > truncation_terms(Precision(50))
    # 4^-K is below 10^-dps
    p = Precision(100)
    assert truncation_terms(p) * math.log10(4) > p.dps


def test_parse_spec():
    assert parse_spec("sigma(2;[])") == SigmaSpec(1)
    assert parse_spec("sigma(4,[0])".replace(",", ";")) == SigmaSpec(2)
    assert parse_spec("sigma(2;[2,4])") == SigmaSpec(1, (2, 1))
    assert parse_spec("simplex(2;[4,4])") == SimplexSpec(1, (4, 4))
    assert str(SigmaSpec(1, (1, 2))) == "sigma(2;[4,2])"
    for bad in ("sigma(3;[])", "sigma(2;[3])", "zeta(2)", "sigma(2;[2"):
        with pytest.raises(ValueError):
            parse_spec(bad)
    with pytest.raises(ValueError):
        SimplexSpec(1, (3,))


def test_sigma_frozen_values():
    p = Precision(60)
    ctx = p.ctx
    for spec, text in FROZEN.items():
        assert abs(sigma_eval(spec, p) - ctx.mpf(text)) < ctx.mpf(10) ** -58
    assert abs(simplex_eval(SimplexSpec(1, (4, 4)), p) - ctx.mpf(FROZEN_SIMPLEX_2_44)) < ctx.mpf(10) ** -58


def test_sigma_against_brute_force_high_precision():
    p = Precision(150)
    for spec in (SigmaSpec(1), SigmaSpec(3, (1,)), SigmaSpec(1, (2, 2, 1))):
        ref = brute_sigma(spec.r, [2 * a for a in spec.parts], 180, 300)
        assert abs(sigma_eval(spec, p) - ref) < mpmath.mpf(10) ** -150


def test_simplex_against_brute_force():
    p = Precision(60)
    for chain in ((4,), (4, 6), (6, 4, 4)):
        ref = brute_simplex(1, chain, 80, 140)
        assert abs(simplex_eval(SimplexSpec(1, chain), p) - ref) < mpmath.mpf(10) ** -60


def test_sigma_many_matches_single():
    p = Precision(80)
    specs = [SigmaSpec(1), SigmaSpec(2, (1,)), SigmaSpec(1, (3, 1))]
    many = sigma_many(specs, p)
    for s, v in zip(specs, many):
        assert v == sigma_eval(s, p)


def test_sigma_identities_published():
    p = Precision(100)
    # zeta(2) = 3 sigma(2;[]) and zeta(4) = 3 sigma(4;[]) - 9 sigma(2;[2])
    assert abs(3 * sigma_eval(SigmaSpec(1), p) - zeta_int(2, p)) < p.eps
    lhs = 3 * sigma_eval(SigmaSpec(2), p) - 9 * sigma_eval(SigmaSpec(1, (1,)), p)
    assert abs(lhs - zeta_int(4, p)) < p.eps


def test_alternating_sum_z3():
    p = Precision(100)
    assert abs(alternating_sum(3, (), p) * 5 / 2 - zeta_int(3, p)) < p.eps
    ctx = mp_context(130)
    ref = ctx.fsum((-1) ** (k + 1) / (ctx.mpf(k) ** 3 * math.comb(2 * k, k)) * ctx.fsum(
        ctx.mpf(j) ** -2 for j in range(1, k)) for k in range(1, 260))
    assert abs(alternating_sum(3, (2,), p) - ref) < mpmath.mpf(10) ** -100


def test_binomial_product_sum_simple():
    p = Precision(60)
    # sum 1/C(2k,k) = (2 pi sqrt3 + 9)/27
    ctx = p.ctx
    v = binomial_product_sum(p, term=lambda k: ctx.mpf(1))
    assert abs(v - (2 * ctx.pi * ctx.sqrt(3) + 9) / 27) < p.eps


def test_dirichlet_sum_against_closed_form():
    p = Precision(100)
    ctx = mp_context(130)
    for x in ("0.3", "1.7", "5.5"):
        xx = ctx.mpf(x)
        ref = (1 - ctx.pi * xx * ctx.cot(ctx.pi * xx)) / (2 * xx * xx)
        assert abs(dirichlet_sum(2, p.mpf(x) ** 2, 0, p) - ref) < mpmath.mpf(10) ** -98
    # a = 0: sum k^-3 / (1 - b/k^4)
    b = p.mpf("0.4")
    ref = ctx.nsum(lambda k: 1 / (k**3 * (1 - ctx.mpf("0.4") / k**4)), [1, ctx.inf])
    assert abs(dirichlet_sum(3, 0, b, p) - ref) < mpmath.mpf(10) ** -95
    with pytest.raises(ZeroDivisionError):
        dirichlet_sum(2, 4, 0, p)


@pytest.mark.parametrize("s", [2, 3, 17, 60, 140])
def test_hurwitz_tail_relative_accuracy(s):
    p = Precision(100)
    ref_ctx = mp_context(400)
    for n in (0, 7, 65):
        ref = ref_ctx.zeta(s, n + 1)
        assert abs(hurwitz_tail(s, n, p) - ref) / ref < ref_ctx.mpf(10) ** -105


def test_dirichlet_sum_large_parameter():
    # large x makes the tail coefficients e_n grow like x^(2n)
    p = Precision(100)
    ctx = mp_context(130)
    for x in ("9.25", "23.4"):
        xx = ctx.mpf(x)
        ref = (1 - ctx.pi * xx * ctx.cot(ctx.pi * xx)) / (2 * xx * xx)
        assert abs(dirichlet_sum(2, p.mpf(x) ** 2, 0, p) - ref) < mpmath.mpf(10) ** -98


def test_hyper_terminating_exact():
    # 2F1(-n, b; c; 1) = (c-b)_n/(c)_n (Chu-Vandermonde)
    for n in range(6):
        v = hyper_pfq([-n, Fraction(3, 2)], [Fraction(7, 3)], 1)
        assert v == pochhammer(Fraction(7, 3) - Fraction(3, 2), n) / pochhammer(Fraction(7, 3), n)
    # a lower parameter -5 is fine when the series stops at k = 3
    assert hyper_pfq([-3, 1], [-5], Fraction(1, 2)) == sum(hyper_term_direct(k) for k in range(4))
    with pytest.raises(ZeroDivisionError):
        hyper_pfq([1], [-2], Fraction(1, 2))


def hyper_term_direct(k):
    return pochhammer(-3, k) * pochhammer(1, k) / pochhammer(-5, k) * Fraction(1, 2) ** k / math.factorial(k)


def test_hyper_numeric_against_mpmath():
    p = Precision(60)
    ctx = mp_context(80)
    v = hyper_pfq([Fraction(1, 2), 1], [Fraction(5, 2)], Fraction(-1, 4), p)
    ref = ctx.hyp2f1(ctx.mpf(1) / 2, 1, ctx.mpf(5) / 2, ctx.mpf(-1) / 4)
    assert abs(v - ref) < mpmath.mpf(10) ** -60
    c = hyper_pfq([1 + 0.5j, 1 - 0.5j], [2], Fraction(1, 3), p)
    assert not isinstance(c, p.ctx.mpc)
    with pytest.raises(DivergenceError):
        hyper_pfq([1, 1], [2], 1, p)
    with pytest.raises(DivergenceError):
        hyper_pfq([1, 1, 1], [2], Fraction(1, 2), p)
    with pytest.raises(ValueError):
        hyper_pfq([1, 1], [2], Fraction(1, 2))


def test_sigma_hat():
    assert sigma_hat((), 5) == 1
    assert sigma_hat((1,), 3) == 1 + Fraction(1, 4)
    assert sigma_hat((2, 1), 3) == (1 + Fraction(1, 16)) * (1 + Fraction(1, 4))


# [published] printed P_k series (P3, P5, P6, P7 as listed; coefficient of x^(2j) is u^j)
P3 = ["3", "-45/4", "-45/16", "-45/64", "-45/256", "-45/1024", "-45/4096", "-45/16384", "-45/65536"]
P5 = ["3", "-205/16", "7115/2304", "207395/331776", "4160315/47775744", "74142995/6879707136",
      "1254489515/990677827584", "20685646595/142657607172096", "336494674715/20542695432781824"]
P6 = ["3", "-5269/400", "6640139/1440000", "1635326891/5184000000", "-5944880821/18662400000000",
      "-212874252291349/67184640000000000", "-141436384956907381/241864704000000000000",
      "-70524260274859115989/870712934400000000000000",
      "-31533457168819214655541/3134566563840000000000000000"]
P7 = ["3", "-5369/400", "8210839/1440000", "-199644809/5184000000", "-680040118121/18662400000000",
      "-278500311775049/67184640000000000", "-84136715217872681/241864704000000000000",
      "-22363377813883431689/870712934400000000000000",
      "-5560090840263911428841/3134566563840000000000000000"]
# printed with the exponent labels shifted after x^4; the values themselves are these
P4 = ["3", "-49/4", "119/144", "3311/5184", "38759/186624", "384671/6718464", "3605399/241864704",
      "33022031/8707129344", "299492039/313456656384"]


@pytest.mark.parametrize("k,printed", [(3, P3), (4, P4), (5, P5), (6, P6), (7, P7)])
def test_pk_series_matches_printed(k, printed):
    assert pk_series(TABLE, k, 8) == [Fraction(c) for c in printed]


def test_pk_series_missing_alpha():
    with pytest.raises(MissingAlphaError):
        pk_series({(): Fraction(3)}, 2, 1)
    assert pk_series({(): Fraction(3)}, 1, 0) == [3]


def test_table_matches_closed_form_oracle():
    for part, v in TABLE.items():
        assert v == alpha_closed(part)
    assert len(TABLE) == sum(len(partitions_of(m)) for m in range(9))


def test_zeta2_rhs_series_coefficients():
    p = Precision(80)
    coeffs = zeta2_rhs_series(6, p)
    for n, c in enumerate(coeffs):
        assert abs(c - zeta_int(2 * n + 2, p)) < p.eps


def test_w_series_seed():
    p = Precision(80)
    w = w_series(2, p)
    assert abs(w[0] - zeta_int(4, p) * 17 / 36) < p.eps
