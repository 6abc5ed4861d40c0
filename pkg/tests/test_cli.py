import json

import pytest

from aperylab.cli import RunConfig, main
from aperylab.mp import Precision
from aperylab.pslq import RelationProblem


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval_sigma(capsys):
    code, out, _ = run(capsys, "eval", "sigma(2;[])")
    data = json.loads(out)
    assert code == 0
    # pi^2/18 to 50 digits
    pi2_18 = Precision(50).ctx.pi ** 2 / 18
    assert abs(Precision(50).mpf(data["value"]) - pi2_18) < 1e-49
    assert data["digits"] == 50


def test_eval_identities(capsys):
    code, out, _ = run(capsys, "eval", "apery2", "x=1/2")
    data = json.loads(out)
    assert code == 0 and data["verified"]
    assert data["lhs"]["value"] == "2." + "0" * 49
    code, out, _ = run(capsys, "eval", "zeta4", "x=0", "--digits", "40")
    data = json.loads(out)
    assert code == 0 and data["lhs"]["value"] == data["rhs"]["value"]
    assert data["lhs"]["value"].startswith("5.110970825858152571")


def test_eval_errors(capsys):
    code, _, err = run(capsys, "eval", "sigma(2;[")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "eval", "apery2")
    assert code == 2
    code, _, err = run(capsys, "eval", "apery2", "x=1")
    assert code == 2
    code, _, _ = run(capsys, "eval", "nosuch")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["eval", "sigma(2;[])", "--format", "xml"])
    assert info.value.code == 2
    code, _, err = run(capsys, "eval", "sigma(2;[])", "--digits", "20")
    assert code == 2 and "digits" in err


def test_discover_small(capsys):
    code, out, _ = run(capsys, "discover", "--max-weight", "2", "--digits", "60")
    assert code == 0
    assert json.loads(out)["alphas"] == {"[]": "3", "[1]": "-9", "[2]": "-45/2", "[1,1]": "27/2"}
    code, out, _ = run(capsys, "discover", "--max-weight", "0")
    assert json.loads(out)["alphas"] == {"[]": "3"}


def test_discover_table_format(capsys):
    code, out, _ = run(capsys, "discover", "--max-weight", "3", "--digits", "60", "--format", "table")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 + 7
    assert lines[-1].split() == ["3", "[1,1,1]", "-27/2"]


def test_discover_failure_exit_code(capsys):
    # weight 5 and beyond cannot be settled at 30 digits
    code, out, _ = run(capsys, "discover", "--max-weight", "8", "--digits", "30")
    assert code in (3, 4)
    assert "attempts" in json.loads(out)


def test_byte_identical_output(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["discover", "--max-weight", "4", "--digits", "80", "--out", str(a)]) == 0
    assert main(["discover", "--max-weight", "4", "--digits", "80", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_prove(capsys):
    code, out, _ = run(capsys, "prove", "--n-max", "10")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    code, out, _ = run(capsys, "prove", "--n-max", "1")
    assert code == 0 and json.loads(out)["t"]["failures"] == []
    code, _, _ = run(capsys, "prove", "--n-max", "0")
    assert code == 2


def test_pslq_values(capsys):
    code, out, _ = run(capsys, "pslq", "--values", "1", "1")
    assert code == 0 and json.loads(out)["relation"] == [1, -1]
    code, _, _ = run(capsys, "pslq")
    assert code == 2


def test_pslq_problem_file(capsys, tmp_path):
    p = Precision(60)
    c = p.ctx
    path = tmp_path / "prob.json"
    path.write_text(json.dumps(RelationProblem([c.pi ** 2, c.zeta(2)], p).to_json()))
    code, out, _ = run(capsys, "pslq", str(path))
    assert code == 0 and json.loads(out)["relation"] == [1, -6]
    path.write_text(json.dumps(RelationProblem([c.pi, c.e, c.euler], p, bound=1e6).to_json()))
    code, out, _ = run(capsys, "pslq", str(path))
    assert code == 3 and json.loads(out)["status"] == "excluded"
    lo = Precision(30)
    lc = lo.ctx
    xs = [lc.pi, lc.e, lc.euler, lc.sqrt(3), lc.log(2), lc.catalan, lc.zeta(3)]
    path.write_text(json.dumps(RelationProblem(xs, lo).to_json()))
    code, out, _ = run(capsys, "pslq", str(path))
    assert code == 4 and json.loads(out)["status"] == "PrecisionExhausted"


def test_pade_series_file(capsys, tmp_path):
    # 1/(1-u) - u: [1, 0, 1, 1, 1, ...]
    path = tmp_path / "s.json"
    path.write_text(json.dumps(["1", "0", "1", "1", "1", "1", "1", "1"]))
    code, out, _ = run(capsys, "pade", str(path), "--max-deg", "3")
    data = json.loads(out)
    assert code == 0
    assert data["candidates"][0]["p"] == 2 and data["candidates"][0]["q"] == 1
    path.write_text(json.dumps(["1", "2"]))
    code, _, _ = run(capsys, "pade", str(path))
    assert code == 2


def test_pade_closed_forms(capsys):
    code, out, _ = run(capsys, "pade", "--max-weight", "6", "--k-max", "5", "--digits", "100",
                       "--format", "table")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5 and all("product form: True" in ln for ln in lines)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "apery2", "--digits", "50", "--coeff-order", "5",
                       "--n-random", "3")
    data = json.loads(out)
    assert code == 0 and data["verified"]
    code, _, _ = run(capsys, "verify", "bradley")
    assert code == 2


def test_run_config():
    with pytest.raises(ValueError):
        RunConfig(digits=10)
    assert RunConfig().precision.dps == 60


def test_pade_bootstrap_failure(capsys):
    code, out, _ = run(capsys, "pade", "--max-weight", "8", "--digits", "30")
    assert code in (3, 4) and "error" in json.loads(out)
