import json
import subprocess
import sys

import pytest

from fresco.cli import main, reproduce_rows
from fresco.report import DivisorReport

QUINTIC = "x^5 + y^5 + z^5 + L*x*y*z^2"
CYCLIC = "x*y^3 + y*z^3 + z*x^3 + L*x*y*z"
TWOCUBICS = "x*y^2 + x^2*y + z*t^3 + t*z^3 + L*x*y*z*t"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "example2": "# a.e0 = b e0, a.e1 = -b e0 + b e1\nb, 0\n-b, b\n",
        "rank1": "3/2*b\n",
        "nonsimple": "1 + b, 0\n0, b\n",
        "broken": "b, 0\nb\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def test_analyze_quintic(capsys):
    code, out, err = run(capsys, "analyze", "--poly", QUINTIC, "--json")
    assert code == 0 and err == ""
    s = json.loads(out)["setup"]
    assert s["rho"] == ["1/5", "1/5", "2/5"]
    assert (s["d"], s["h"], s["r"]) == (4, 1, 5)
    assert s["u"] == ["-1", "-1", "-2", "5"]
    code, out, _ = run(capsys, "analyze", "--poly", QUINTIC)
    assert "d = 4   h = 1   r = 5" in out


def test_exit_codes(capsys, files):
    assert run(capsys, "analyze", "--poly", "x^3 + y^3 + z^3 + L*x*y*z")[0] == 4
    code, out, err = run(capsys, "analyze", "--poly", "x^3 + y^3 + z^3 + L*x*y*z")
    assert out == "" and "quasi-homogeneous" in err
    code, out, err = run(capsys, "analyze", "--poly", "x^5 + y^5 z^5 + L*x*y*z^2")
    assert code == 2 and out == ""
    assert "column 11" in err and err.rstrip().endswith("^")
    assert run(capsys, "analyze", "--poly", "x + x^2 + x^3 + L*x^4", "--vars", "x,y,z")[0] == 3
    assert run(capsys, "abmod", files["nonsimple"])[0] == 5
    assert run(capsys, "abmod", files["broken"])[0] == 2
    assert run(capsys, "abmod", "/nonexistent/file")[0] == 2
    assert run(capsys, "abmod", files["rank1"], "--trunc", "1")[0] == 2
    assert run(capsys, "reproduce", "--case", "nosuchfamily")[0] == 1


def test_vars_flag_controls_order(capsys):
    code, out, _ = run(capsys, "analyze", "--poly", QUINTIC, "--vars", "z,y,x", "--json")
    assert code == 0
    assert json.loads(out)["variables"] == ["z", "y", "x"]


def test_bernstein_reference_outputs(capsys):
    code, out, _ = run(capsys, "bernstein", "--poly", QUINTIC)
    assert code == 0
    assert "divisor candidate: B | (ξ + 7/10)(ξ + 4/5)^2(ξ + 6/5)" in out
    code, out, _ = run(capsys, "bernstein", "--poly", TWOCUBICS, "--path", "balanced")
    expected = "".join(f"(ξ + {x})" for x in
                       ["7/6", "4/3", "3/2", "5/3", "11/6", "2", "13/6", "7/3", "5/2", "8/3", "17/6", "3"])
    assert f"B | {expected}" in out
    code, out, _ = run(capsys, "bernstein", "--poly", CYCLIC, "--form", "x^7", "--json")
    d = json.loads(out)
    assert d["divisor"] == "(ξ + 2)(ξ + 3)(ξ + 5)"
    assert d["label"] == "divisor candidate"
    assert "phi(s) = 0" in d["ode"]


def test_bernstein_report_round_trip(capsys):
    for argv in (["--poly", QUINTIC, "--form", "x*z"], ["--poly", TWOCUBICS, "--path", "revlex"],
                 ["--poly", CYCLIC, "--form", "x^2"]):
        code, out, _ = run(capsys, "bernstein", *argv, "--json")
        d = json.loads(out)
        rep = DivisorReport.from_dict(d)
        assert rep.to_dict() == d
        assert DivisorReport.from_dict(json.loads(json.dumps(rep.to_dict()))) == rep


def test_json_round_trip_other_commands(capsys, files):
    for argv in (["analyze", "--poly", QUINTIC], ["abmod", files["example2"]], ["reproduce", "--case", "cyclic"]):
        code, out, _ = run(capsys, *argv, "--json")
        assert code == 0
        d = json.loads(out)
        assert json.loads(json.dumps(d, ensure_ascii=False)) == d


def test_abmod_files(capsys, files):
    code, out, _ = run(capsys, "abmod", files["example2"])
    assert code == 0 and "Bernstein polynomial: x^2 + 2*x + 1" in out
    code, out, _ = run(capsys, "abmod", files["rank1"], "--json")
    d = json.loads(out)
    assert d["bernstein"] == "x + 3/2"
    assert d["simple_pole"] is True
    code, out, err = run(capsys, "abmod", files["nonsimple"])
    assert out == "" and "NotSimplePole" in err


def test_reproduce_full(capsys):
    code, out, _ = run(capsys, "reproduce")
    assert code == 0
    assert out.rstrip().endswith("16/16 rows matched")
    assert out.count("MATCH") == 16


def test_reproduce_single_family(capsys):
    code, out, _ = run(capsys, "reproduce", "--case", "twocubics")
    assert code == 0
    assert "1/1 rows matched" in out
    assert "P_d factors (lex, left to right): 14, 77/6" in out


def test_reproduce_json(capsys):
    code, out, _ = run(capsys, "reproduce", "--json")
    d = json.loads(out)
    assert (d["matched"], d["total"]) == (16, 16)
    assert all(r["matching_strategies"] for r in d["rows"])
    assert [r["id"] for r in d["rows"]][:3] == ["quintic/1", "quintic/x", "quintic/z"]


def test_reproduce_deterministic():
    assert reproduce_rows() == reproduce_rows()


def test_color_env(capsys, monkeypatch):
    monkeypatch.setenv("FRESCO_COLOR", "1")
    _, out, _ = run(capsys, "reproduce", "--case", "nonisolated")
    assert "\033[32mMATCH" in out
    monkeypatch.setenv("FRESCO_COLOR", "0")
    _, out, _ = run(capsys, "reproduce", "--case", "nonisolated")
    assert "\033[" not in out


def test_module_entry_point_streams():
    proc = subprocess.run(
        [sys.executable, "-m", "fresco", "analyze", "--poly", "x^3 + y^3 + z^3 + L*x*y*z"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 4
    assert proc.stdout == ""
    assert proc.stderr.startswith("fresco: C2Violation")
    proc = subprocess.run([sys.executable, "-m", "fresco", "reproduce", "--case", "quintic/z"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stderr == ""
    assert "quintic/z" in proc.stdout and "quintic/z^2" not in proc.stdout
