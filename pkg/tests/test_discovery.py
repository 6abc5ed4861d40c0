from fractions import Fraction

import pytest

from aperylab.discovery import (
    BootstrapFailure,
    BootstrapState,
    alphas_to_json,
    bootstrap_step,
    conjecture_closed_forms,
    max_residual,
    product_pattern,
    run_table1,
    series_coefficients,
    simplex_basis,
    simplex_probe,
    table_rows,
    verify_conjecture,
)
from aperylab.exact import RationalFunction, RationalPoly, partition_str, product_form
from aperylab.mp import Precision, zeta_int
from aperylab.pslq import verify_relation
from aperylab.series import simplex_eval
from oracles import alpha_closed
from table1_data import TABLE1

F = Fraction

# [published] closed forms of P_1 .. P_7 as printed, in u = x^2
PRINTED_PK = {
    1: RationalFunction(RationalPoly([3])),
    2: product_form(12, [F(1, 4)], [1]),
    3: product_form(48, [F(1, 4)], [4]),
    4: product_form(12 * 16, [F(1, 4), F(9, 4)], [4, 9]),
    5: product_form(48 * 16, [F(1, 4), F(9, 4)], [9, 16]),
    6: product_form(48 * 64, [F(1, 4), F(9, 4), F(25, 4)], [9, 16, 25]),
    7: product_form(192 * 64, [F(1, 4), F(9, 4), F(25, 4)], [16, 25, 36]),
}


def test_first_steps():
    st = BootstrapState(precision=Precision(60))
    st = bootstrap_step(st)
    assert st.alphas == {(): 3} and st.completed_weight == 0
    st = bootstrap_step(st)
    assert st.alphas[(1,)] == -9
    st = bootstrap_step(st)
    assert st.alphas[(2,)] == F(-45, 2) and st.alphas[(1, 1)] == F(27, 2)
    assert [e["weight"] for e in st.log] == [0, 1, 2]
    assert all(e["status"] == "found" for e in st.log)


def test_table1_reproduced(table200):
    printed = {part: F(v) for part, v in TABLE1}
    assert table200.alphas == printed
    assert len(printed) == 67
    assert table200.alphas[(3, 2)] == F(945, 2)
    assert table200.alphas[(8,)] == F(-1376235, 56)
    assert table200.alphas[(7,)] == F(-49149, 7)
    assert table200.alphas[(1,) * 8] == F(2187, 4480)


def test_table_matches_product_oracle(table200):
    for part, v in table200.alphas.items():
        assert v == alpha_closed(part)


def test_log_records_escalation(table200):
    w8 = [e for e in table200.log if e["weight"] == 8]
    assert w8[-1]["status"] == "found"
    # the 23-term weight-8 vector is beyond what 200 digits can settle
    assert w8[0]["digits"] == 200 and w8[0]["status"] != "found"
    assert w8[-1]["digits"] > 200
    for e in table200.log:
        if e["status"] == "found":
            assert e["recheck_digits"] == e["digits"] + 30


def test_failure_when_no_escalation_allowed(table200):
    st = BootstrapState(alphas={k: v for k, v in table200.alphas.items() if sum(k) < 8},
                        completed_weight=7, precision=Precision(200), max_escalations=0)
    with pytest.raises(BootstrapFailure) as info:
        bootstrap_step(st)
    assert info.value.weight == 8
    assert st.completed_weight == 7


def test_uniqueness_under_iteration_cap():
    a = run_table1(5, Precision(100))
    b = run_table1(5, Precision(100), BootstrapState(precision=Precision(100), max_iterations=5000))
    assert a.alphas == b.alphas


def test_determinism_across_precision(table200):
    st300 = run_table1(8, Precision(300))
    assert st300.alphas == table200.alphas
    assert all(e["status"] == "found" for e in st300.log)


def test_table_rows_layout(table200):
    rows = table_rows(table200.alphas, 8)
    assert len(rows) == 67
    assert rows[0] == (0, "[]", "3")
    # weight 6 in the printed order: 6, 5,1, 4,2, 4,1,1, 3,3, ...
    w6 = [part for m, part, _ in rows if m == 6]
    assert w6[:5] == ["[6]", "[5,1]", "[4,2]", "[4,1,1]", "[3,3]"]
    data = alphas_to_json(table200.alphas, 2)
    assert data == {"[]": "3", "[1]": "-9", "[2]": "-45/2", "[1,1]": "27/2"}
    assert partition_str((2, 1)) in alphas_to_json(table200.alphas, 3)


def test_closed_forms(table200):
    rep = conjecture_closed_forms(table200.alphas, 7, 8)
    assert not rep.missing and rep.all_match
    for k, f in PRINTED_PK.items():
        assert rep.closed_forms[k] == f
        assert product_pattern(k) == f
    assert rep.degrees[1][:2] == (0, 0)
    assert rep.degrees[6][:2] == (3, 3)


def test_closed_forms_report_missing():
    # with only weights <= 2 there are 3 coefficients: P_4 needs 5
    alphas = {(): F(3), (1,): F(-9), (2,): F(-45, 2), (1, 1): F(27, 2)}
    rep = conjecture_closed_forms(alphas, 4, 2, max_deg=1)
    assert rep.closed_forms[1] == PRINTED_PK[1]
    assert 4 in rep.missing
    assert not rep.all_match


def test_verify_apery2_low_precision():
    p = Precision(60)
    rep = verify_conjecture("apery2", p, coeff_order=6, n_random=5)
    tol = p.ctx.mpf(10) ** (-60 + 15)
    assert rep["digits"] == 60
    assert rep["coefficients"]["residuals"][0] < tol
    assert set(rep["special"]) == {"1/6", "1/2", "1/3", "1/4", "1/sqrt2"}
    for rec in rep["special"].values():
        assert rec["residual"] < tol and rec["stated_residual"] < tol and rec["closed_residual"] < tol
    assert len(rep["random"]) == 5
    assert max_residual(rep) < tol


def test_verify_zeta4_series():
    p = Precision(60)
    lhs, rhs = series_coefficients("zeta4", 5, p)
    assert max(abs(a - b) for a, b in zip(lhs, rhs)) < p.ctx.mpf(10) ** -55
    assert series_coefficients("koecher", 3, p) is None


def test_verify_without_coefficient_route():
    # identities with no series route still get the point checks
    rep = verify_conjecture("lesh", Precision(40), coeff_order=2, n_random=3)
    assert rep["coefficients"] is None and not rep["skipped"]


def test_simplex_basis_shapes():
    assert [str(s) for s in simplex_basis(6)] == ["simplex(6;[])", "simplex(2;[4])"]
    assert len(simplex_basis(10)) == 5 == len(simplex_basis(10, "compositions"))
    assert len(simplex_basis(12)) == 7 and len(simplex_basis(12, "compositions")) == 8
    with pytest.raises(ValueError):
        simplex_basis(8, "bogus")


@pytest.mark.parametrize("weight,relation", [
    (6, (163, -288, -432)),
    (8, (1373, -2304, -5184, -3456)),
    (10, (11143, -18432, -41472, -41472, -62208, -27648)),
])
def test_simplex_identities_recovered(weight, relation):
    res = simplex_probe(weight, Precision(200))
    assert res.found and res.relation == relation


@pytest.mark.parametrize("weight", [12, 14])
def test_simplex_family_stops_after_zeta10(weight):
    res = simplex_probe(weight, Precision(200))
    assert res.status == "excluded" and res.bound > 10**12


def test_simplex_compositions_continue_at_zeta12():
    # keeping both orders of the mixed chain (4,6) / (6,4) gives a genuine relation
    p = Precision(200)
    res = simplex_probe(12, p, chains="compositions")
    assert res.found
    hi = Precision(400)
    xs = [zeta_int(12, hi)] + [simplex_eval(s, hi) for s in simplex_basis(12, "compositions")]
    _, ok = verify_relation(res.relation, xs, hi)
    assert ok
    bracket = [F(-a, -res.relation[1]) for a in res.relation[1:]]
    assert bracket == [1, F(9, 4), F(9, 4), F(81, 16), F(9, 4), F(27, 8), F(27, 8), F(3, 2)]
