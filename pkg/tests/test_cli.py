import io
import json
import subprocess
import sys
from pathlib import Path

from admissibility.cli import run
from admissibility.logic import mk_D, render
from admissibility.suite import g2

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_eliminate_table():
    code, out, _ = call("eliminate", str(DATA / "g2.json"), "--criterion", "weak",
                        "--class", "mixed", "--rounds", "fix")
    assert code == 0
    lines = out.splitlines()
    assert lines[2].split() == ["0", "{T,B}", "{L,R}"]
    assert lines[3].split() == ["1", "{T}", "{L,R}"]
    assert lines[4].split() == ["2", "{T}", "{L}"]
    assert lines[-1] == "converged_at=2"


def test_eliminate_json_and_rounds():
    code, out, _ = call("eliminate", "g2", "--format", "json", "--rounds", "1")
    data = json.loads(out)
    assert code == 0 and data["rounds"] == [[["T", "B"], ["L", "R"]], [["T"], ["L", "R"]]]
    assert data["converged_at"] is None


def test_parse_echo():
    code, out, _ = call("parse", "B_1 (RAT_2 & play_2(L))")
    assert (code, out) == (0, "B_1 (RAT_2 & play_2(L))\n")
    code, out, _ = call("parse", "B_1   (RAT_2&play_2( L ))")
    assert out == "B_1 (RAT_2 & play_2(L))\n"


def test_parse_error_exit_2():
    code, _, err = call("parse", "B_1 (RAT_2 &")
    assert code == 2 and "position" in err


def test_check_mbar(tmp_path):
    path = tmp_path / "m2.json"
    assert call("witness", "g2", "--kind", "mbar", "--k", "2", "-o", str(path))[0] == 0
    formula = render(mk_D(g2(), 2, 1))
    code, out, _ = call("check", "--structure", str(path), "--state", "(2,1,(T,L))",
                        "--formula", formula, "--oracle", "theorem")
    assert (code, out) == (0, "true\n")
    (tmp_path / "f.txt").write_text(formula)
    code, out, _ = call("check", "--structure", str(path), "--state", "(2,1,(T,L))",
                        "--formula", "@" + str(tmp_path / "f.txt"))
    assert out == "true\n"
    code, out, err = call("check", "--structure", str(path), "--state", "(2,1,(T,L))",
                          "--formula", formula, "--oracle", "reject")
    assert code == 1 and "satisfiability" in err
    code, out, _ = call("check", "--structure", str(path), "--state", "(2,1,(T,L))",
                        "--formula", "<> (play_1(T) & RAT_2)", "--oracle", "family")
    assert out == "true\n"


def test_domain_errors_exit_1(tmp_path):
    code, _, err = call("belief", "g1", "--player", "1", "--strategy", "Q")
    assert code == 1 and "'Q'" in err
    code, _, err = call("belief", "g1", "--player", "3", "--strategy", "T")
    assert code == 1 and "player 3" in err
    path = tmp_path / "m.json"
    call("witness", "g2", "--kind", "mbar", "--k", "0", "-o", str(path))
    code, _, err = call("check", "--structure", str(path), "--state", "nowhere", "--formula", "true")
    assert code == 1 and "nowhere" in err
    code, _, err = call("check", "--structure", str(path), "--state", "(0,1,(T,L))",
                        "--formula", "play_2(X)")
    assert code == 1 and "'X'" in err
    code, _, err = call("eliminate", str(tmp_path / "missing.json"))
    assert code == 1
    code, _, err = call("witness", "g2", "--kind", "minfty", "--k", "2", "--player", "1",
                        "--strategy", "B")
    assert code == 1 and "'B'" in err


def test_bad_files_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = call("eliminate", str(bad))
    assert code == 2 and "line 1" in err
    bad.write_text(json.dumps({"strategies": [["a"], ["b"]]}))
    assert call("eliminate", str(bad))[0] == 2
    bad.write_text(json.dumps({"game": g2().to_json(), "states": [{"id": "x"}]}))
    assert call("check", "--structure", str(bad), "--state", "x", "--formula", "true")[0] == 2


def test_belief_output():
    assert call("belief", "g1", "--player", "1", "--strategy", "B")[1] == "none\n"
    assert call("belief", "g1", "--player", "1", "--strategy", "B", "--support", "subset")[1] == "{L: 1}\n"
    code, out, _ = call("belief", "pd", "--player", "2", "--strategy", "D", "--format", "json")
    assert json.loads(out)["weights"] == [[["C"], "1/2"], [["D"], "1/2"]]


def test_rationalizable_and_witness_kinds(tmp_path):
    code, out, _ = call("rationalizable", "pd", "--format", "json")
    assert json.loads(out)["sets"] == [["D"], ["D"]]
    code, out, _ = call("witness", "matching_pennies", "--kind", "rat")
    assert len(json.loads(out)["states"]) == 4
    code, out, _ = call("witness", "g2", "--kind", "minfty", "--k", "2", "--player", "1",
                        "--strategy", "T")
    assert json.loads(out)["designated"] == "omega"


def test_verify_exit_status_and_determinism():
    a = call("verify", "--seeds", "0..4")
    b = call("verify", "--seeds", "0..4", "--jobs", "2")
    assert a[0] == 0 and a[1] == b[1]
    assert json.loads(a[1])["seeds"] == [0, 4]
    assert call("verify", "--seeds", "x..y")[0] == 2


def test_verify_violation_exit_3(monkeypatch):
    from admissibility import harness

    def broken(game, label=None, report=None):
        report = report or harness.Report()
        report.fail("pearce_weak", label)
        return report

    monkeypatch.setattr(harness, "crosscheck_pearce", broken)
    code, out, _ = call("verify", "--seeds", "0..0")
    assert code == 3 and json.loads(out)["violations"][0]["check"] == "pearce_weak"


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "admissibility.cli", "parse", "RAT_1 -> B_2 true"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "RAT_1 -> B_2 true\n"
