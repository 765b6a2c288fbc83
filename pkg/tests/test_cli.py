import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from eigenpolys.cli import RunConfig, UsageError, main, parse_range
from eigenpolys.exact import parse_rational

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
HERMITE = str(DATA / "hermite.json")
LAGUERRE = str(DATA / "laguerre.json")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_hermite_sigma_example():
    code, text = run("hermite", "sigma", "--n", "4", "--k", "3", "--gamma1", "1", "--mode", "all")
    assert code == 0
    row = json.loads(text)
    assert row == {
        "n": 4, "k": 3, "sigma_bruteforce": "3/8", "sigma_sum": "3/8",
        "sigma_closed": "-3/8", "nonzero": True,
    }


def test_spectrum_example():
    code, text = run("op", "spectrum", "--op", HERMITE, "--n", "5")
    doc = json.loads(text)
    assert code == 0
    assert doc["eigenvalues"] == ["0", "-2", "-4", "-6", "-8", "-10"] and doc["distinct"]


def test_eigenpoly_both_methods():
    code, text = run("op", "eigenpoly", "--op", HERMITE, "--n", "3", "--method", "both")
    doc = json.loads(text)
    assert code == 0 and doc["agree"]
    assert doc["backsub"] == doc["explicit"] == ["0", "-3/2", "0", "1"]
    code, text = run("op", "eigenpoly", "--op", HERMITE, "--n", "3", "--format", "pretty")
    assert "backsub: x^3 - 3/2*x" in text


def test_degree_violation_exit(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"coeffs": [["0"], ["0", "0", "1"]]}))
    code, _ = run("op", "spectrum", "--op", str(bad), "--n", "3")
    assert code == 1
    assert json.loads(capsys.readouterr().err)["error"] == "DegreeViolation"


@pytest.mark.parametrize(
    "argv, err",
    [
        (("op", "spectrum", "--op", "/nonexistent.json", "--n", "3"), "FileNotFound"),
        (("op", "spectrum", "--op", '{"coeffs": [["x"]]}', "--n", "3"), "ParseError"),
        (("hermite", "sigma", "--n", "5", "--k", "3", "--mode", "closed"), "ParityError"),
        (("hermite", "sigma", "--n", "3", "--k", "5"), "IndexError"),
        (("darboux", "factorize", "--gamma1", "0"), "SingularPivot"),
        (("op", "eigenpoly", "--op", '{"coeffs": [["0"], ["1"]]}', "--n", "2"), "EigenvalueCollision"),
        (("hermite", "gamma", "--gamma1", "0"), "ZeroGamma"),
        (("nonsense",), "UsageError"),
        (("hermite", "table", "--n-range", "5:3", "--k-range", "3"), "UsageError"),
    ],
)
def test_error_codes(argv, err, capsys):
    code, _ = run(*argv)
    assert code == 1
    assert json.loads(capsys.readouterr().err)["error"] == err


def test_violated_identity_exit():
    code, text = run("op", "verify", "--op", HERMITE, "--n", "2", "--poly", "0,0,1", "--lam", "-4")
    assert code == 2 and json.loads(text)["holds"] is False
    code, _ = run("op", "verify", "--op", HERMITE, "--n", "2", "--poly=-1/2,0,1")
    assert code == 0


def test_verify_family_streams_rows():
    code, text = run("op", "verify", "--op", LAGUERRE, "--n", "6")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0 and [r["n"] for r in rows] == list(range(7))
    assert all(r["holds"] for r in rows)


def test_fit_verdicts():
    code, text = run("rec", "fit", "--op", HERMITE, "--n", "15", "--hermite-gamma1", "1", "--p", "1")
    assert code == 0 and json.loads(text)["fits"][0]["ok"]
    code, text = run("rec", "fit", "--op", HERMITE, "--n", "15", "--gamma-const", "1", "--p", "1")
    fit = json.loads(text)["fits"][0]
    assert code == 2 and not fit["ok"] and fit["failure"]["residual"] != "0"
    code, text = run("rec", "fit", "--op", HERMITE, "--n", "15", "--p-max", "2")
    assert [f["p"] for f in json.loads(text)["fits"]] == [0, 1, 2]


def test_fit_family_document(tmp_path):
    doc = tmp_path / "fam.json"
    doc.write_text(json.dumps({"polys": [["1"], ["0", "1"], ["-1/2", "0", "1"], ["0", "-3/2", "0", "1"]]}))
    code, text = run("rec", "fit", "--family", str(doc), "--p", "1")
    assert code == 0
    rows = json.loads(text)["fits"][0]["matrix"]["rows"]
    assert [r["alpha"] for r in rows] == [["0"], ["1/2", "0"], ["1", "0"]]


def test_darboux_commands(tmp_path):
    code, text = run("darboux", "factorize", "--n-max", "6", "--c", "0", "--gamma1", "1")
    doc = json.loads(text)
    assert code == 0 and doc["reconstruction"]
    assert doc["l"][:3] == ["1", "-1/2", "2"]
    (tmp_path / "U.json").write_text(json.dumps(doc["U"]))
    (tmp_path / "L.json").write_text(json.dumps(doc["L"]))
    code, text = run("darboux", "transform", "--factors", str(tmp_path / "U.json"),
                     str(tmp_path / "L.json"), "--c", "0", "--s", "1")
    J1 = json.loads(text)
    assert code == 0 and J1["p"] == 1
    code, text = run("darboux", "conjugate", "--n-max", str(len(J1["rows"]) - 1),
                     "--hermite-gamma1", "1")
    conj = json.loads(text)
    assert conj["banded"]
    for row in J1["rows"]:
        n = row["n"]
        assert conj["rows"][n][max(0, n - 1): n + 1] == row["alpha"]
    code, text = run("darboux", "conjugate", "--n-max", "5", "--gamma-const", "1")
    assert json.loads(text)["first_defect"] == {"i": 2, "j": 0, "value": "-1/2"}


def test_necessary_grid():
    code, text = run("test", "necessary", "--op", HERMITE, "--n-range", "4:6",
                     "--k-range", "3:4", "--hermite-gamma1", "1")
    rows = [json.loads(line) for line in text.splitlines()]
    assert code == 0
    assert rows[0] == {"n": 4, "k": 3, "value": "-3/4", "nonzero": True}
    assert [(r["n"], r["k"]) for r in rows] == [(4, 3), (4, 4), (5, 3), (5, 4), (6, 3), (6, 4)]


def test_hermite_table_csv_and_workers():
    code, serial = run("hermite", "table", "--n-range", "3:10", "--k-range", "3:10")
    code2, parallel = run("hermite", "table", "--n-range", "3:10", "--k-range", "3:10", "--workers", "3")
    assert code == code2 == 0 and serial == parallel
    rows = list(csv.DictReader(io.StringIO(serial)))
    assert list(rows[0]) == ["n", "k", "sigma_bruteforce", "sigma_sum", "sigma_closed", "nonzero"]
    first = next(r for r in rows if (r["n"], r["k"]) == ("4", "3"))
    assert (first["sigma_sum"], first["sigma_closed"]) == ("3/8", "-3/8")
    assert all(r["sigma_bruteforce"] == r["sigma_sum"] for r in rows)


@pytest.mark.parametrize(
    "argv",
    [
        ("op", "delta", "--op", HERMITE, "--n", "5"),
        ("hermite", "gamma", "--gamma1", "2/3", "--m", "8"),
        ("rec", "gen", "--n", "6"),
        ("darboux", "factorize", "--c", "1/3", "--gamma1", "-2", "--n-max", "5"),
    ],
)
def test_json_round_trip(argv):
    code, text = run(*argv, "--format", "json")
    assert code == 0
    try:
        docs = [json.loads(text)]
    except json.JSONDecodeError:  # grid commands emit one JSON object per line
        docs = [json.loads(line) for line in text.splitlines()]

    def canonical(value):
        if isinstance(value, str):
            try:
                r = parse_rational(value)
            except ValueError:
                return
            assert value == (str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}")
        elif isinstance(value, dict):
            for v in value.values():
                canonical(v)
        elif isinstance(value, list):
            for v in value:
                canonical(v)

    for doc in docs:
        assert json.loads(json.dumps(doc)) == doc
        canonical(doc)


def test_bsl_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("BSL_CAP", "2")
    code, _ = run("op", "eigenpoly", "--op", HERMITE, "--n", "3", "--method", "explicit")
    assert code == 1 and json.loads(capsys.readouterr().err)["error"] == "CapExceeded"


def test_helpers():
    assert parse_range("3:5") == range(3, 6) and parse_range("7") == range(7, 8)
    with pytest.raises(UsageError):
        parse_range("a:b")
    with pytest.raises(UsageError):
        RunConfig("x", "xml")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "eigenpolys", "hermite", "gamma", "--m", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert [Fraction(v) for v in json.loads(proc.stdout)["gammas"]] == [1, Fraction(-1, 2), 2]
