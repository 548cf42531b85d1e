import io
import json
import subprocess
import sys

import pytest

from quiverkoszul import cli, fixtures


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def ex51_file(tmp_path):
    path = tmp_path / "ex51.kz"
    path.write_text(fixtures.text("ex51"), encoding="utf-8")
    return str(path)


@pytest.fixture
def cochains(tmp_path):
    eta = tmp_path / "eta.json"
    theta = tmp_path / "theta.json"
    eta.write_text(json.dumps([[{"path": "x.y", "coeff": "1"}], [{"path": "y", "coeff": "1"}]]))
    theta.write_text(json.dumps({"degree": 1, "values": [[], [{"path": "y", "coeff": "1"}]]}))
    return str(eta), str(theta)


def test_resolve(ex51_file):
    out = run_json("resolve", ex51_file, "--maxdeg", "5")
    assert out["t"] == [0, 1, 1, 1, 1, 1]
    assert len(out["generators"]) == 6
    assert out["generators"][1][0] == {"source": "o", "target": "o", "terms": [{"path": "x", "coeff": "1"}]}


def test_comult():
    out = run_json("comult", "fixture:ex51", "--n", "2", "--r", "1")
    assert out["n"] == 2 and out["r"] == 1
    code, _, err = run("comult", "fixture:ex51", "--n", "2", "--r", "3")
    assert code == 2 and "--r" in err


def test_hh():
    out = run_json("hh", "fixture:ex53", "--n", "4")
    assert out["dim_hh"] == 0 and out["dim_im"] == 49
    assert [r["weight"] for r in out["by_weight"]] == list(range(4))
    w = run_json("hh", "fixture:ex51", "--n", "1", "--weight", "1")
    assert w["weight"] == 1
    assert [r["weight"] for r in run_json("hh", "fixture:ex52", "--n", "1")["by_weight"]] == [0, 1]


def test_hh_needs_weight_when_infinite(tmp_path):
    poly = tmp_path / "poly.kz"
    poly.write_text("vertex o\narrow x : o -> o\narrow y : o -> o\nrelation x.y - y.x\nmaxdeg 4\n")
    code, _, err = run("hh", str(poly), "--n", "1")
    assert code == 2 and "weight" in err
    assert run_json("hh", str(poly), "--n", "1", "--weight", "1")["dim_hh"] == 4


def test_cup_reduce(ex51_file, cochains):
    eta, theta = cochains
    out = run_json("cup", ex51_file, "--eta", eta, "--theta", theta, "--reduce")
    assert out["degree"] == 2
    assert out["class"] == "zero"
    assert out["representative"][0] == []
    assert out["representative"][1] == [{"path": "y.y.x", "coeff": "1"}]


def test_cup_without_reduce_and_nonzero_class(tmp_path, cochains):
    eta, theta = cochains
    out = run_json("cup", "fixture:ex51", "--eta", eta, "--theta", theta)
    assert "class" not in out
    one = tmp_path / "one.json"
    one.write_text(json.dumps({"degree": 0, "values": [[{"path": "o", "coeff": "1"}]]}))
    out = run_json("cup", "fixture:ex51", "--eta", str(one), "--theta", eta, "--reduce")
    assert out["class"] != "zero"


def test_cup_input_errors(tmp_path, cochains):
    eta, _ = cochains
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("cup", "fixture:ex51", "--eta", str(bad), "--theta", eta)[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps([[{"path": "x", "coeff": "1"}]]))
    assert run("cup", "fixture:ex51", "--eta", str(wrong), "--theta", eta)[0] == 2
    mixed = tmp_path / "mixed.json"
    mixed.write_text(json.dumps([[{"path": "x", "coeff": "1"}], [{"path": "q", "coeff": "1"}]]))
    assert run("cup", "fixture:ex51", "--eta", str(mixed), "--theta", eta)[0] == 2
    assert run("cup", "fixture:ex51", "--eta", str(tmp_path / "missing.json"), "--theta", eta)[0] == 2
    nococycle = tmp_path / "nc.json"
    nococycle.write_text(json.dumps([[{"path": "y", "coeff": "1"}], []]))
    code, _, err = run("cup", "fixture:ex51", "--eta", str(nococycle), "--theta", eta, "--reduce")
    assert code == 2 and "cocycle" in err


def test_dual():
    out = run_json("dual", "fixture:ex51", "--m", "1", "--n", "1")
    assert out["entries"] == [
        {"i": 0, "j": 0, "l": 0, "coeff": "1"},
        {"i": 0, "j": 1, "l": 1, "coeff": "1"},
        {"i": 1, "j": 0, "l": 1, "coeff": "1"}]
    assert run("dual", "fixture:ex51", "--m", "4", "--n", "4")[0] == 2


def test_center():
    out = run_json("center", "fixture:ex53_c2", "--maxdeg", "4")
    assert out["dims"] == [1, 0, 1, 0, 1]
    assert [d["degree"] for d in out["degrees"]] == [0, 1, 2, 3, 4]
    assert run_json("center", "fixture:ex53_cm1", "--maxdeg", "4")["dims"] == [1, 0, 3, 0, 6]


def test_verify_ok_and_deterministic():
    code, first, _ = run("verify", "fixture:ex53", "--maxdeg", "4")
    assert code == 0
    assert run("verify", "fixture:ex53", "--maxdeg", "4")[1] == first
    report = json.loads(first)
    assert report["ok"] and [c["check"] for c in report["checks"]] == [
        "exactness", "delta_squared_zero", "reconstruction", "coassociativity",
        "lifting_identity", "dual_associativity"]


def test_non_koszul_exit_code():
    code, out, _ = run("verify", "fixture:nonkoszul")
    assert code == 3
    report = json.loads(out)
    assert not report["ok"]
    assert report["checks"][0]["witness"] == {"n": 2, "d": 4, "homology": 2}
    for cmd in (["hh", "--n", "1", "--weight", "1"], ["center"], ["dual", "--m", "1", "--n", "1"]):
        code, _, err = run(cmd[0], "fixture:nonkoszul", *cmd[1:])
        assert code == 3 and "2" in err


def test_usage_errors(tmp_path):
    assert run("resolve", "fixture:nosuch")[0] == 2
    assert run("resolve", str(tmp_path / "missing.kz"))[0] == 2
    assert run("resolve", "fixture:ex51", "--maxdeg", "1")[0] == 2
    assert run("hh", "fixture:ex51", "--n", "9")[0] == 2
    assert run("nosuchcommand")[0] == 2
    assert run("hh", "fixture:ex51")[0] == 2
    bad = tmp_path / "bad.kz"
    bad.write_text("vertex o\narrow x : o -> p\n")
    code, _, err = run("resolve", str(bad))
    assert code == 2 and "line 2" in err


def test_size_guard():
    code, _, err = run("resolve", "fixture:ex52", "--maxdeg", "6", "--size-guard", "50")
    assert code == 2 and "size guard" in err
    assert run("resolve", "fixture:ex52", "--maxdeg", "5", "--size-guard", "50")[0] == 0
    assert cli.largest_block(fixtures.load("ex52").quiver, 6) == 64


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "quiverkoszul", "resolve", "fixture:ex51", "--maxdeg", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["t"] == [0, 1, 1, 1]
