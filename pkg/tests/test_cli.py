import csv
import io
import json
import subprocess
import sys

import pytest

from polarspaces import cli
from polarspaces import forms as fm
from polarspaces import regularity as rg
from polarspaces.errors import ParseError, UnknownSuite
from polarspaces.gf import make_field


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


@pytest.fixture(scope="module")
def q43_json(tmp_path_factory):
    p = tmp_path_factory.mktemp("forms") / "Q43.json"
    p.write_text(json.dumps(fm.parabolic(make_field(3)).to_json()))
    return str(p)


def test_parse_space_round_trip():
    for text in ("sp(2,2)", "qplus(3,3)", "herm(2,4)", "parabolic(3)", "custom:/tmp/x.json", "scenario:s.json"):
        assert str(cli.parse_space(text)) == text
    assert cli.parse_space(" sp( 2 , 3 ) ") == cli.parse_space("sp(2,3)")
    for bad in ("qminus(3,2)", "sp(2)", "sp(a,b)", ""):
        with pytest.raises(ParseError):
            cli.parse_space(bad)


def test_census_examples():
    code, out = run("census", "--space", "sp(2,2)")
    c = json.loads(out)[0]
    assert code == 0
    assert (c["points"], c["generators"], c["regular"], c["tight"]) == (15, 15, True, True)
    assert c["hyperbolic_line_sizes"] == [3] and c["after_quotient"] is False
    c = json.loads(run("census", "--space", "qplus(3,2)")[1])[0]
    assert (c["points"], c["generators"]) == (35, 30)
    c = json.loads(run("census", "--space", "parabolic(2)")[1])[0]
    assert c["after_quotient"] and c["points"] == 15 and c["regular"]


def test_census_errors(capsys):
    assert run("census", "--space", "qminus(3,2)")[0] == 2
    assert "unknown space spec" in capsys.readouterr().err
    assert run("census", "--space", "sp(6,2)", "--cap-points", "100")[0] == 2
    assert run("census", "--space", "custom:/nonexistent.json")[0] == 2
    assert run("census")[0] == 2


def test_census_csv():
    code, out = run("census", "--space", "sp(2,2)", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 1 and rows[0]["points"] == "15"


@pytest.mark.parametrize("space", ["sp(2,2)", "parabolic(2)", "herm(2,4)", "qplus(3,2)"])
def test_verify_all_passes(space):
    code, out = run("verify", "--space", space, "--suite", "all")
    rows = json.loads(out)
    assert code == 0
    assert {r["suite"] for r in rows} == set(cli.SUITES)
    assert all(r["verdict"] for r in rows)


def test_verify_custom_non_regular_space(q43_json):
    code, out = run("verify", "--space", f"custom:{q43_json}")
    rows = {r["suite"]: r for r in json.loads(out)}
    assert code == 0
    # biconditional suites hold on Q(4,3); the catalog-only complement suite is skipped
    assert rows["3G"]["verdict"] and rows["regular"]["verdict"]
    assert rows["complements"]["detail"] == "not applicable"


def test_verify_errors(capsys):
    assert run("verify", "--space", "sp(2,2)", "--suite", "nope")[0] == 2
    assert "unknown suite" in capsys.readouterr().err
    with pytest.raises(UnknownSuite):
        cli.verify(cli.build_space(cli.parse_space("sp(2,2)")), ["nope"], {})


def test_corrupted_form_fails_with_assertion_exit(tmp_path, capsys):
    bad = fm.canonical_symplectic(make_field(3), 1).to_json()
    bad["matrix"][0][0] = 1
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    assert run("census", "--space", f"custom:{p}")[0] == 1
    assert "assertion failure" in capsys.readouterr().err


def test_injected_fault_reports_a_witness(monkeypatch):
    monkeypatch.setattr(rg, "check_R3", lambda S, a, b: rg.Verdict(False))
    code, out = run("verify", "--space", "sp(2,2)", "--suite", "RA")
    row = json.loads(out)[0]
    assert code == 1 and not row["verdict"] and row["witness"]


def test_invariant_violation_in_a_suite_is_a_failure(monkeypatch):
    def boom(S, c):
        raise cli.InvariantViolation("injected")
    monkeypatch.setitem(cli.SUITES, "GS", boom)
    code, out = run("verify", "--space", "sp(2,2)", "--suite", "GS")
    row = json.loads(out)[0]
    assert code == 1 and row["witness"] == {"error": "injected"}


def test_verify_output_is_deterministic():
    a = run("verify", "--space", "sp(2,2)", "--suite", "all", "--threads", "4")
    b = run("verify", "--space", "sp(2,2)", "--suite", "all")
    assert a == b
    code, out = run("verify", "--space", "sp(2,2)", "--suite", "GS", "--timings")
    assert "wall_time" in json.loads(out)[0]


def test_verify_scenario(tmp_path):
    p = tmp_path / "nr.json"
    p.write_text(json.dumps({"scenario": "nonregularity", "field": "gf(2)"}))
    code, out = run("verify", "--space", f"scenario:{p}")
    assert code == 0 and all(r["verdict"] for r in json.loads(out))
    code, out = run("census", "--space", f"scenario:{p}")
    assert code == 0 and json.loads(out)[0]["counts"] == [2, 3]


def test_sweep_examples():
    code, out = run("sweep", "--template", "sp(n,q)", "--param", "n=1-3", "--param", "q=2,3",
                    "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6
    assert list(rows[0]) == cli.SWEEP_COLUMNS
    assert all(r["regular"] == "True" for r in rows)
    rows = json.loads(run("sweep", "--template", "qplus(n,q)", "--param", "n=2-3", "--param", "q=2,3")[1])
    assert all(r["hyperbolic_line_size"] == 2 for r in rows)
    rows = json.loads(run("sweep", "--template", "parabolic(q)", "--param", "q=2,3")[1])
    assert [(r["regular"], r["after_quotient"]) for r in rows] == [(True, True), (False, False)]


def test_sweep_marks_too_large_rows():
    rows = json.loads(run("sweep", "--template", "sp(n,2)", "--param", "n=2-3", "--cap-points", "20")[1])
    assert [r["status"] for r in rows] == ["ok", "too large"]
    assert run("sweep", "--template", "sp(n,2)", "--param", "n")[0] == 2


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "polarspaces", "census", "--space", "sp(1,3)"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)[0]["points"] == 4
