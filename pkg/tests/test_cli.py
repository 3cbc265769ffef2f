import json
import os
import subprocess
import sys

import pytest

from hypercf.cli import main
from hypercf.figures import figure_degrees, normalize, figure_text
from hypercf.hyper import dump_spec, extremal_spec
from hypercf.quartic import build_lambda0


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eq_expand_degrees(capsys):
    code, out, _ = run(capsys, "eq", "expand", "--p", "7", "--count", "40")
    assert code == 0
    assert [int(x) for x in out.split(",")] == figure_degrees(2)[:40]


def test_eq_expand_figure_layout(capsys):
    code, out, _ = run(capsys, "eq", "expand", "--p", "7", "--count", "428", "--emit", "figure")
    assert code == 0 and normalize(out) == normalize(figure_text(2))


def test_eq_expand_quotients(capsys):
    code, out, _ = run(capsys, "eq", "expand", "--p", "5", "--count", "3", "--emit", "quotients")
    assert code == 0 and json.loads(out.splitlines()[0]) == [0, 3]


def test_eq_verify(capsys):
    code, out, _ = run(capsys, "eq", "verify", "--p", "11", "--count", "200")
    assert code == 0
    assert "divisibility by A: ok" in out and "pattern match: 200/200" in out


def test_eq_verify_all(capsys):
    code, out, _ = run(capsys, "eq", "verify", "--all-p", "5..13", "--count", "100", "--jobs", "2")
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("p = ")] == [
        "p = 5", "p = 7", "p = 11", "p = 13"]


def test_resource_cap_exit_code(capsys):
    code, _, err = run(capsys, "eq", "expand", "--p", "5", "--count", "450", "--cap", "512")
    assert code == 2 and "certified" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["eq", "expand", "--p", "5"])
    assert e.value.code == 2
    code, _, err = run(capsys, "eq", "expand", "--p", "3", "--count", "5")
    assert code == 2 and "p > 3" in err
    code, _, _ = run(capsys, "expand", "--spec", "/nonexistent.json", "--count", "5")
    assert code == 2


def test_expand_spec_file(capsys, tmp_path):
    path = tmp_path / "lam5.json"
    dump_spec(build_lambda0(5).spec, path)
    code, out, _ = run(capsys, "expand", "--spec", str(path), "--count", "20")
    assert code == 0 and [int(x) for x in out.split(",")] == figure_degrees(1)[:20]
    code, out, _ = run(capsys, "expand", "--spec", str(path), "--count", "14", "--emit", "lambdas")
    assert code == 0 and "?" not in out


def test_check_perfect(capsys, tmp_path):
    path = tmp_path / "lam7.json"
    dump_spec(build_lambda0(7).spec, path)
    csv_path = tmp_path / "rep.csv"
    code, out, _ = run(capsys, "check-perfect", "--spec", str(path), "--count", "100",
                       "-o", str(csv_path))
    assert code == 0 and "matched 100 of 100" in out
    assert csv_path.read_text().splitlines()[0] == "n,index,lambda,degree"


def test_check_perfect_bad_hypothesis(capsys, tmp_path):
    lam = build_lambda0(7).spec
    d = lam.to_dict()
    d["eps1"] = (d["eps1"] + 1) % 7 or 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, out, _ = run(capsys, "check-perfect", "--spec", str(path), "--count", "10")
    assert code == 1 and "not satisfied" in out


def test_ctx(capsys):
    code, out, _ = run(capsys, "ctx", "--p", "5", "--k", "2", "--json")
    d = json.loads(out)
    assert code == 0 and d["omega"] == 4 and d["v"] == [3, 2, 3, 2] and d["W2_checks"]


def test_predict(capsys):
    code, out, _ = run(capsys, "predict", "--kind", "first", "--k", "2", "--l", "3", "--count", "19")
    assert out.strip() == "0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2"
    code, out, _ = run(capsys, "predict", "--kind", "second", "--p", "5", "--k", "2",
                       "--l", "1", "4", "4", "--count", "15", "--emit", "degrees")
    assert [int(x) for x in out.split(",")] == figure_degrees(1)[:15]


def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "--p", "7", "--count", "430")
    assert code == 0 and out.startswith("nu = 8/3")
    assert "94,115,115/171" in out


def test_figures(capsys):
    code, out, _ = run(capsys, "figures", "--which", "2")
    assert code == 0 and normalize(out) == normalize(figure_text(2))


def test_console_entry_point_schoolbook():
    env = dict(os.environ, HYPERCF_FFT_THRESHOLD="off")
    res = subprocess.run([sys.executable, "-m", "hypercf.cli", "eq", "expand", "--p", "5",
                          "--count", "449"], capture_output=True, text=True, env=env, timeout=300)
    assert res.returncode == 0
    assert [int(x) for x in res.stdout.split(",")] == figure_degrees(1)
