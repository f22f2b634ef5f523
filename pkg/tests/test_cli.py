import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from symhyper.cli import RunConfig, UsageError, main, render, run
from symhyper.exact import LaurentPolynomial, scalar_from_str
from symhyper.families import PRESETS, FamilySpec, u_closed

F = Fraction


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def spec_file(tmp_path):
    def write(spec, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec.to_dict()))
        return str(path)
    return write


def test_verify_all_on_hermite_file(capsys, spec_file):
    code, out, _ = invoke(capsys, "verify", "--suite", "all", "--family", spec_file(PRESETS["hermite"]),
                          "--n-max", "20")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and len(report["suites"]) == 6


def test_table_csv_for_gegenbauer(capsys, spec_file):
    code, out, _ = invoke(capsys, "table", "--family", spec_file(FamilySpec.gegenbauer(a=3, b=1)),
                          "--n-max", "5", "--out", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5 and rows[0]["u"] == "3/5"


def test_malformed_spec_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = invoke(capsys, "table", "--family", str(bad))
    assert code == 2 and out == "" and "cannot read" in err
    bad.write_text(json.dumps({"kind": "GeneralizedGegenbauer", "a": "x"}))
    assert invoke(capsys, "table", "--family", str(bad))[0] == 2
    assert invoke(capsys, "table", "--family", str(tmp_path / "missing.json"))[0] == 2


def test_usage_errors():
    with pytest.raises(UsageError):
        RunConfig(command="table", n_max=0)
    with pytest.raises(UsageError):
        RunConfig(command="nope")
    with pytest.raises(SystemExit) as exc:
        main(["table", "--out", "xml"])
    assert exc.value.code == 2


def test_conflicting_suite_spellings(capsys):
    assert invoke(capsys, "verify", "ns", "--suite", "eigen", "--family", "hermite")[0] == 2
    code, out, _ = invoke(capsys, "verify", "ns", "--family", "hermite", "--n-max", "6")
    assert code == 0 and [s["name"] for s in json.loads(out)["suites"]] == ["ns"]


def test_output_is_byte_identical(capsys, tmp_path):
    argv = ["verify", "--family", "qjacobi-default", "--n-max", "8"]
    first = invoke(capsys, *argv)[1]
    second = invoke(capsys, *argv)[1]
    assert first == second
    target = tmp_path / "r.json"
    assert main(argv + ["--output", str(target)]) == 0
    assert target.read_text() == first
    proc = subprocess.run([sys.executable, "-m", "symhyper"] + argv, capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == first


def test_timing_is_opt_in(capsys):
    out = invoke(capsys, "verify", "eigen", "--family", "hermite", "--n-max", "4", "--timing")[1]
    assert "wall_time_s" in json.loads(out)["suites"][0]
    out = invoke(capsys, "verify", "eigen", "--family", "hermite", "--n-max", "4")[1]
    assert "wall_time_s" not in json.loads(out)["suites"][0]


@pytest.mark.parametrize("preset", sorted(PRESETS))
def test_table_round_trips_losslessly(capsys, preset):
    spec = PRESETS[preset]
    as_json = json.loads(invoke(capsys, "table", "--family", preset, "--n-max", "12")[1])
    as_csv = list(csv.DictReader(io.StringIO(invoke(capsys, "table", "--family", preset, "--n-max", "12",
                                                    "--out", "csv")[1])))
    assert FamilySpec.from_dict(as_json["family"]) == spec
    for row_j, row_c in zip(as_json["rows"], as_csv):
        n = int(row_c["n"])
        lam, nu = spec.lambda_nu(n)
        for got in (row_j, row_c):
            assert scalar_from_str(got["lambda"]) == lam
            assert scalar_from_str(got["nu"]) == nu
            assert scalar_from_str(got["u"]) == u_closed(spec, n)


def test_poly_command(capsys):
    code, out, _ = invoke(capsys, "poly", "--family", "hermite", "--degree", "3")
    assert code == 0
    report = json.loads(out)
    assert LaurentPolynomial.from_json(report) == LaurentPolynomial({3: 1, 1: -3})
    desc = json.loads(invoke(capsys, "poly", "--family", "qlaguerre-default", "--n-max", "6")[1])
    rec = json.loads(invoke(capsys, "poly", "--family", "qlaguerre-default", "--n-max", "6",
                            "--method", "recurrence")[1])
    assert desc["rows"] == rec["rows"]
    assert invoke(capsys, "poly", "--family", "hermite", "--degree", "-1")[0] == 2


def test_realize_command(capsys, tmp_path):
    code, out, _ = invoke(capsys, "realize", "--family", "gegenbauer-default", "--check", "--n-max", "10")
    assert code == 0 and json.loads(out)["check"]["passed"]
    code, out, _ = invoke(capsys, "realize", "--family", "hermite", "--apply", "0,0,1")
    report = json.loads(out)
    # L x^2 = lambda_2 x^2 + nu_2 on the Hermite preset
    lam, nu = PRESETS["hermite"].lambda_nu(2)
    assert code == 0 and LaurentPolynomial.from_json(report["output"]) == LaurentPolynomial({2: lam, 0: nu})
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps(LaurentPolynomial({3: 1, 0: F(1, 2)}).to_json()))
    assert invoke(capsys, "realize", "--family", "qjacobi-default", "--apply", str(poly))[0] == 0
    assert invoke(capsys, "realize", "--family", "qlaguerre-default")[0] == 2
    assert invoke(capsys, "realize", "--family", "hermite", "--apply", "1,zz")[0] == 2


def test_algebra_command(capsys):
    code, out, _ = invoke(capsys, "algebra", "verify", "--family", "qjacobi-default", "--n-max", "12")
    report = json.loads(out)
    # the published xi0 and zeta are errata; the fitted relation is what must hold
    assert set(report["errata"]) == {"xi0", "zeta"}
    code, out, _ = invoke(capsys, "algebra", "fit", "--family", "gegenbauer-default", "--template", "gegenbauer")
    fit = json.loads(out)["fit"]
    assert code == 0 and fit["consistent"] and fit["unique"]
    assert all(isinstance(v, str) for v in fit["coefficients"].values())
    code, _, _ = invoke(capsys, "algebra", "fit", "--family", "gegenbauer-default", "--template", "sl2")
    assert code == 1


def test_classify_command(capsys, tmp_path):
    spec = PRESETS["qjacobi-default"]
    pairs = [spec.lambda_nu(n) for n in range(20)]
    seq = tmp_path / "seq.json"
    seq.write_text(json.dumps({"lambda": [str(p[0]) for p in pairs], "nu": [str(p[1]) for p in pairs]}))
    code, out, _ = invoke(capsys, "classify", "--input", str(seq))
    assert code == 0 and json.loads(out)["class"] == "q"
    seq.write_text(json.dumps({"lambda": [str(n) for n in range(20)], "nu": [0, 0] + [str(n**3) for n in range(18)]}))
    assert invoke(capsys, "classify", "--input", str(seq))[0] == 1
    seq.write_text(json.dumps({"lambda": ["1"] * 3, "nu": ["0"] * 3}))
    assert invoke(capsys, "classify", "--input", str(seq))[0] == 2


def test_gauge_command(capsys):
    code, out, _ = invoke(capsys, "gauge", "--family", "hermite", "--xi2", "1/3", "--eta2", "2", "--n-max", "8")
    report = json.loads(out)
    assert code == 0 and all(r["eigenpolynomial_kept"] for r in report["rows"])
    # xi2 = -1 kills every even eigenvalue's n-dependence
    code, out, _ = invoke(capsys, "gauge", "--family", "hermite", "--xi2", "-1", "--n-max", "8")
    assert code == 1 and not json.loads(out)["passed"]


def test_render_csv_flattens_nested_reports():
    text = render({"a": {"b": [F(1, 3), None]}, "c": True}, "csv")
    assert list(csv.reader(io.StringIO(text))) == [["key", "value"], ["a.b[0]", "1/3"], ["a.b[1]", ""],
                                                   ["c", "True"]]


def test_run_returns_report(tmp_path):
    code, report = run(RunConfig(command="table", family="hermite", n_max=3, output_path=tmp_path / "t.csv",
                                 output_format="csv"))
    assert code == 0 and len(report["rows"]) == 3
