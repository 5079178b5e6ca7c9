import json
import subprocess
import sys
from pathlib import Path

import pytest

from contraction_lab import cli

DOCS = Path(__file__).resolve().parent.parent / "docs"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_transform_to_ambient(capsys):
    code, rec = as_json(capsys, "transform", "--space", "s2", "--chart", "spherical",
                        "--to-ambient", "1.5708", "0", "--radius", "1", "--check-roundtrip")
    assert code == 0
    a = rec["outputs"]["ambient"]
    assert a[0] == pytest.approx(1.0, abs=1e-9) and abs(a[1]) < 1e-12
    assert rec["outputs"]["roundtrip_residual"] < 1e-12
    assert rec["pass"] is True


def test_transform_coverage_error(capsys):
    code, out, err = run(capsys, "transform", "--space", "e11", "--chart", "pseudo_polar", "--from-ambient", "0", "1")
    assert code == 2
    assert "t > |x|" in err


def test_transform_from_ambient_roundtrip(capsys):
    code, rec = as_json(capsys, "transform", "--space", "h2", "--chart", "elliptic", "--radius", "2",
                        "--param", "a=2.0,1.1,0.3", "--to-ambient", "2.5", "1.5", "--signs", "1", "-1", "1")
    assert code == 0
    amb = [str(v) for v in rec["outputs"]["ambient"]]
    code, rec2 = as_json(capsys, "transform", "--space", "h2", "--chart", "elliptic", "--radius", "2",
                         "--param", "a=2.0,1.1,0.3", "--from-ambient", *amb, "--check-roundtrip")
    assert code == 0
    assert rec2["outputs"]["coords"] == pytest.approx([2.5, 1.5], abs=1e-12)
    assert rec2["outputs"]["signs"] == [1, -1, 1]


def test_transform_unknown_chart(capsys):
    code, _, err = run(capsys, "transform", "--space", "s2", "--chart", "nope", "--to-ambient", "1", "1")
    assert code == 2 and "spherical" in err


@pytest.mark.parametrize("space,six,label", [
    ("e2", ["1", "0", "0", "0", "0", "0"], "polar"),
    ("e11", ["1", "0", "0", "0", "0", "0"], "Q2"),
    ("e11", ["0", "1", "1", "0", "0", "0"], "Q5"),
    ("e2", ["0", "0", "0", "1", "0", "1"], "trivial"),
])
def test_classify(capsys, space, six, label):
    code, rec = as_json(capsys, "classify", "--space", space, *six)
    assert code == 0
    assert rec["outputs"]["label"] == label
    if label == "polar":
        assert (rec["outputs"]["I1"], rec["outputs"]["I2"]) == (1, 0)
    if label == "Q5":
        assert rec["outputs"]["separable"] is False


def test_classify_wrong_space(capsys):
    code, _, _ = run(capsys, "classify", "--space", "s2", "1", "0", "0", "0", "0", "0")
    assert code == 2


def test_lame_oracle(capsys):
    code, rec = as_json(capsys, "lame", "2", "0", "1", "2", "--oracle")
    assert code == 0 and rec["pass"] is True
    assert rec["outputs"]["max_deviation"] < 1e-9
    code, rec = as_json(capsys, "lame", "3", "0", "1", "2")
    assert rec["outputs"]["count"] == 7


def test_lame_repeated_parameters(capsys):
    code, rec = as_json(capsys, "lame", "1", "1", "0", "0", "--oracle")
    assert code == 0
    assert sorted(rec["outputs"]["oracle_spectrum"]) == pytest.approx([-1, -1, 0], abs=1e-12)
    code, _, err = run(capsys, "lame", "2", "0", "0", "1")
    assert code == 2 and "distinct" in err


def test_eval_basis(capsys):
    code, rec = as_json(capsys, "eval-basis", "--space", "s2", "--basis", "spherical", "--qn", "l=0",
                        "--qn", "m=0", "0.3", "0.2")
    assert code == 0
    assert rec["outputs"]["value"]["re"] == pytest.approx(0.28209479177387814)
    code, rec = as_json(capsys, "eval-basis", "--space", "h2", "--basis", "pseudo_spherical", "--qn", "rho=1.5",
                        "--qn", "m=1", "--residual", "0.5", "0.3")
    assert rec["outputs"]["helmholtz_residual"] < 1e-5
    code, _, err = run(capsys, "eval-basis", "--space", "e2", "--basis", "polar", "--qn", "k=1", "1", "0")
    assert code == 2 and "m" in err


def test_expand(capsys):
    code, rec = as_json(capsys, "expand", "plane-wave", "--k", "1", "--r", "10", "--delta", "1", "--m", "3")
    assert code == 0 and rec["outputs"]["error"] < 1e-9
    code, rec = as_json(capsys, "expand", "interbasis", "--l", "4")
    assert code == 0 and rec["outputs"]["residual"] < 1e-10
    code, rec = as_json(capsys, "expand", "wigner", "--l", "6", "--m2", "2", "--m1", "-3")
    assert code == 0 and rec["outputs"]["spread"] < 1e-8


def test_expand_failure_exit_code(capsys):
    code, rec = as_json(capsys, "expand", "plane-wave", "--r", "10", "--M", "3")
    assert code == 1 and rec["pass"] is False


def test_verify_unknown_id(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2
    assert "S2.spherical→E2.polar" in err


def test_verify_single_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "S2.spherical→E2.polar", "--format", "csv", "--samples", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "id,R,max_err,slope,pass"
    assert len(lines) == 6


def test_verify_failure_exit(capsys):
    # a sweep that stops at R = 4 cannot reach the final-error threshold
    code, rec = as_json(capsys, "verify", "S2.spherical→E2.polar", "--R-list", "2,3,4", "--samples", "5")
    assert code == 1 and rec["pass"] is False


def test_verify_all_json_schema(capsys, tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--all", "--json", str(target), "--samples", "4")
    assert code == 0
    data = json.loads(target.read_text())
    schema = json.loads((DOCS / "convergence_report.schema.json").read_text())
    assert len(data) >= 20
    for item in data:
        jsonschema.validate(item, schema)


def test_output_record_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((DOCS / "output_record.schema.json").read_text())
    for argv in (["classify", "--space", "e2", "1", "0", "0", "0", "0", "0"],
                 ["lame", "2", "0", "1", "2", "--oracle"],
                 ["expand", "interbasis"],
                 ["verify", "--list"]):
        code, rec = as_json(capsys, *argv)
        jsonschema.validate(rec, schema)


def test_seventeen_digits(capsys):
    code, out, _ = run(capsys, "expand", "wigner", "--l", "1", "--m2", "1", "--m1", "1", "--format", "json")
    rec = json.loads(out)
    assert '"hyp3f2": 0.50000000000000' in out or "0.49999999999999" in out
    assert rec["outputs"]["hyp3f2"] == pytest.approx(0.5)


def test_deterministic_output(capsys):
    argv = ["verify", "S2.elliptic→E2.parabolic", "--samples", "3", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_config_and_flag_precedence(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "lab.cfg"
    cfg.write_text("# sweep settings\nformat = csv\nR_list = 100, 200, 400\nsamples = 3\n")
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    code, out, _ = run(capsys, "verify", "S2.elliptic→E2.cartesian")
    assert code == 0
    assert out.splitlines()[0].startswith("id,R")
    assert len(out.strip().splitlines()) == 4
    code, out, _ = run(capsys, "verify", "S2.elliptic→E2.cartesian", "--R-list", "100,200,400,800", "--format", "json")
    assert json.loads(out)["inputs"]["R_list"] == [100, 200, 400, 800]


def test_bad_config(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour = blue\n")
    monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
    code, _, err = run(capsys, "verify", "--list")
    assert code == 2 and "colour" in err


def test_argparse_usage_error_is_two():
    with pytest.raises(SystemExit) as e:
        cli.main(["classify", "--space", "e2", "1", "2"])
    assert e.value.code == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "contraction_lab", "verify", "--list", "--format", "json"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0
    assert "H2.equidistant→E11.pseudo_polar" in json.loads(r.stdout)["outputs"]["ids"]
