import json

import pytest

from dinfty import corpus
from dinfty.cli import Config, main
from dinfty.lam import proof_to_json


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def usage_error(capsys, *argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    capsys.readouterr()
    return exc.value.code


def test_config_validation():
    with pytest.raises(ValueError):
        Config(N=5)
    with pytest.raises(ValueError):
        Config(k=0)
    assert Config().N == 2


def test_poset_check_and_opens(capsys):
    code, out = run(capsys, "--format", "json", "poset", "opens", "lattice_L")
    assert code == 0
    assert len(json.loads(out)["opens"]) == 10


def test_homotopy_pi1(capsys):
    code, out = run(capsys, "homotopy", "pi1", "pseudo_circle")
    assert code == 0 and out.startswith("free rank 1")
    code, out = run(capsys, "homotopy", "pi1", str(corpus.data_path("lattice_L.json")))
    assert code == 0 and out.startswith("trivial")


def test_contractible_fails_without_cone(capsys):
    code, out = run(capsys, "homotopy", "contractible", "pseudo_circle")
    assert code == 1
    assert json.loads(out.splitlines()[-1])["error"] == "VerificationFailed"


def test_tower_build(capsys):
    code, out = run(capsys, "--format", "json", "--k", "2", "--N", "1", "tower", "build")
    assert code == 0
    assert json.loads(out)["sizes"] == [3, 11]


def test_lambda_eval_and_errors(capsys):
    code, out = run(capsys, "lambda", "eval", r"(\x.x) y", "--env", "y=f#9")
    assert code == 0 and "f#9" in out
    code, out = run(capsys, "lambda", "normalize", r"(\x y.x) a b")
    assert code == 0 and "a" in out
    code, out = run(capsys, "lambda", "eval", r"(\x.x")
    assert code == 1 and json.loads(out)["error"] == "ParseError"
    assert usage_error(capsys, "lambda", "eval") == 2
    assert usage_error(capsys, "lambda", "eval", "y", "--env", "y") == 2


def test_groupoid_commands(capsys):
    code, out = run(capsys, "groupoid", "verify", "--space", "nplus2")
    assert code == 0 and "(c) associativity: pass" in out
    code, out = run(capsys, "--format", "dot", "groupoid", "build", "--levels", "2")
    assert code == 0 and out.startswith("digraph")
    code, out = run(capsys, "--format", "json", "groupoid", "iso")
    assert code == 0 and json.loads(out)["passed"]


def test_proof_make_and_compare(capsys, tmp_path):
    _, _, proofs = corpus.proof_corpus()
    for name in ("id-1", "id-2", "nested-outer"):
        (tmp_path / f"{name}.json").write_text(json.dumps(proof_to_json(proofs[name])))
    code, out = run(capsys, "proof", "make", "--step", r"(\x.x) y", "--step", "beta:y")
    assert code == 0 and json.loads(out)["steps"][1]["kind"] == "beta"
    code, out = run(capsys, "--format", "json", "proof", "compare", str(tmp_path / "id-1.json"),
                    str(tmp_path / "id-2.json"), "--env", "y=f#9")
    r = json.loads(out)
    assert code == 0 and r["periods"] == [1, 2] and r["homotopic"] is True
    code, out = run(capsys, "proof", "compare", str(tmp_path / "id-1.json"), str(tmp_path / "nested-outer.json"))
    assert code == 1 and json.loads(out)["error"] == "EquationMismatch"
    code, out = run(capsys, "proof", "make", "--step", "x", "--step", "beta:y")
    assert code == 1 and json.loads(out)["error"] == "InvalidStep"


def test_usage_errors(capsys):
    assert usage_error(capsys, "--N", "7", "tower", "build") == 2
    assert usage_error(capsys, "nonsense") == 2
    assert usage_error(capsys, "proof", "compare", "only-one.json") == 2


def test_missing_file(capsys):
    code, out = run(capsys, "poset", "check", "/nonexistent/space.json")
    assert code == 2 and json.loads(out)["error"] == "FileNotFound"
