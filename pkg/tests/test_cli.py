import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ftlcalc import io
from ftlcalc.cli import main
from ftlcalc.ftl import additive_ftl

GOLDEN = Path(__file__).parent / "golden"
REGENERATE = os.environ.get("FTLCALC_REGENERATE_GOLDEN") == "1"

THETA = json.dumps({"ring": "zeps", "bound": 4,
                    "coeffs": [{"k": 1, "c": "1"}, {"k": 2, "c": "1 - eps"}, {"k": 3, "c": "2 + eps"}]})

CASES = {
    "verify_additive": (["verify", "--builtin", "additive", "--json"], 0),
    "verify_alternative": (["verify", "--builtin", "alternative", "--json"], 0),
    "verify_mul_minus": (["verify", "--builtin", "mul-minus", "--json"], 0),
    "verify_perturbed": (["verify", "--builtin", "additive", "--perturb", "a4_400=2", "--json"], 1),
    "show_additive": (["show", "--builtin", "additive"], 0),
    "log_mul_minus": (["log", "--builtin", "mul-minus", "--degree", "6", "--check", "--json"], 0),
    "transform_additive": (["transform", "--builtin", "additive", "--theta", THETA,
                            "--degree", "3", "--json"], 0),
    "todd_rank4": (["todd", "--theta", "1/2,3,-1,2", "--theta-bound", "5", "--degree", "4",
                    "--rank", "4", "--bound", "8", "--json"], 0),
    "adams_p4": (["adams", "p", "4", "--json"], 0),
    "adams_omega5": (["adams", "omega", "5", "--json"], 0),
    "adams_q2_plus": (["adams", "q", "2", "--part", "plus", "--json"], 0),
    "adams_q2_minus": (["adams", "q", "2", "--part", "minus", "--json"], 1),
    "borel_chi": (["borel", "chi", "4", "--rank", "6", "--json"], 0),
    "borel_todd_W": (["borel", "todd", "--part", "W", "--degree", "8", "--json"], 0),
    "borel_todd_M": (["borel", "todd", "--part", "M", "--degree", "6", "--json"], 0),
    "borel_char": (["borel", "char", "--degree", "6", "--json"], 0),
    "hrr_k3": (["hrr", "k3", "--rank2r", "4", "--deg-e", "3 - eps", "--json"], 0),
    "hrr_surface": (["hrr", "surface", "--todd", '{"1": "1", "c2": "(1 - eps)/24"}',
                     "--euler", '{"rank2r": 2, "deg_e": "1 - eps"}', "--json"], 0),
}


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    argv, expected_code = CASES[name]
    code, out, _ = run(argv, capsys)
    assert code == expected_code
    path = GOLDEN / f"{name}.json"
    if REGENERATE:
        path.write_text(out, encoding="utf-8")
    assert out == path.read_text(encoding="utf-8")


# -- spot checks on the golden content ----------------------------------------------

def load(name):
    return json.loads((GOLDEN / f"{name}.json").read_text(encoding="utf-8"))


def test_golden_contents():
    assert load("verify_additive")["passed"] is True
    bad = load("verify_perturbed")
    assert bad["checks"]["neutral"]["witness"] == {"l": 4, "monomial": [4, 0, 0], "lhs": "2", "rhs": "1"}
    assert load("log_mul_minus")["matches_additive"] is True
    assert load("adams_omega5")["omega"] == "(15 - 10*eps)*gamma^2"
    assert load("hrr_k3")["chi"] == "7 - 5*eps"
    assert load("hrr_surface")["chi"] == "3 - 3*eps"
    assert "error" in load("adams_q2_minus")


def test_show_round_trips():
    law = io.ftl_from_json(load("show_additive"))
    assert law == additive_ftl()


# -- exit codes under faults ---------------------------------------------------------

def test_text_report(capsys):
    code, out, _ = run(["verify", "--builtin", "additive"], capsys)
    assert code == 0
    assert "associativity" in out and "FAIL" not in out


def test_missing_file(capsys, tmp_path):
    code, _, err = run(["verify", str(tmp_path / "nope.json")], capsys)
    assert code == 2 and "cannot read" in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "law.json"
    path.write_text("{not json", encoding="utf-8")
    code, _, err = run(["verify", str(path)], capsys)
    assert code == 2 and "invalid JSON" in err


def test_illegal_symbol_in_perturbation(capsys):
    code, _, _ = run(["verify", "--builtin", "additive", "--perturb", "a4_400=tau"], capsys)
    assert code == 2


def test_malformed_perturbation(capsys):
    code, _, err = run(["verify", "--builtin", "additive", "--perturb", "a4400=2"], capsys)
    assert code == 2 and "bad perturbation" in err


def test_syntax_error_in_expression(capsys):
    code, _, _ = run(["verify", "--builtin", "additive", "--perturb", "a4_400=(1+"], capsys)
    assert code == 2


def test_truncated_law_needs_bound(capsys, tmp_path):
    path = tmp_path / "law.json"
    path.write_text(io.dumps(io.ftl_to_json(additive_ftl().truncate(2))), encoding="utf-8")
    code, _, _ = run(["verify", str(path)], capsys)
    assert code == 2
    code, out, _ = run(["verify", str(path), "--bound", "2", "--json"], capsys)
    assert code == 0 and json.loads(out)["bound"] == 2


def test_inconsistent_table(capsys):
    law = {"ring": "zeps", "degree_bound": 0,
           "coeffs": [{"l": 2, "i": 1, "j": 1, "k": 0, "c": "1"},
                      {"l": 2, "i": 0, "j": 1, "k": 1, "c": "2"}]}
    code, _, _ = run(["verify", json.dumps(law)], capsys)
    assert code == 2


def test_unknown_ring(capsys):
    code, _, _ = run(["todd", "--ring", "nope", "--degree", "3"], capsys)
    assert code == 2


def test_logarithm_obstruction_is_a_check_failure(capsys):
    code, out, _ = run(["log", "--builtin", "alternative", "--degree", "2", "--json"], capsys)
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_odd_rank_rejected(capsys):
    code, _, _ = run(["hrr", "k3", "--rank2r", "3"], capsys)
    assert code == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--builtin", "nonsense"])
    assert info.value.code == 2


def test_against_additive_detects_difference(capsys):
    code, out, _ = run(["verify", "--builtin", "alternative", "--against", "additive", "--json"], capsys)
    assert code == 1
    report = json.loads(out)
    assert report["checks"]["matches_additive"]["passed"] is False
    assert all(report["checks"][n]["passed"] for n in ("neutral", "associativity"))


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ftlcalc", "adams", "omega", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "omega(3) = (3 - 6*eps)*gamma"
