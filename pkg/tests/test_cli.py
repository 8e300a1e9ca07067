from __future__ import annotations

import json
import subprocess
import sys

import pytest

from conftest import ALL_PAIRS
from expected import CLASS_COUNTS
from twistgrowth.cli import emit, main
from twistgrowth.ratfun import Polynomial as P
from twistgrowth.ratfun import RationalSeries
from twistgrowth.vagroup import bundled_path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_emit_examples():
    assert emit(RationalSeries(P([1]), P([1, -1])), 3)["coefficients"] == [1, 1, 1]
    zero = emit(RationalSeries(P([]), P([1])), 3)
    assert zero == {"num": [], "den": [1], "coefficients": [0, 0, 0]}
    assert emit(RationalSeries(P([1, 1]), P([1, -1])), 4)["coefficients"] == [1, 2, 2, 2]


def test_emit_round_trip():
    s = RationalSeries(P([1, 2, 1]), P([1, -3, 3, -1]))
    doc = json.loads(json.dumps(emit(s, 10)))
    again = RationalSeries(P(doc["num"]), P(doc["den"]))
    assert again == s and again.expand(10) == doc["coefficients"]


def test_check_z_neg(capsys):
    code, out, _ = run(capsys, "check", "z_phi_neg", "--endo", "neg", "--radius", "6")
    doc = json.loads(out)
    assert code == 0
    assert doc["series"] == {"num": [1, 1], "den": [1, -1]}
    assert doc["mismatch"] == []


@pytest.mark.parametrize("name,endo", ALL_PAIRS)
def test_check_all_bundled(capsys, name, endo):
    code, out, _ = run(capsys, "check", name, "--endo", endo)
    doc = json.loads(out)
    assert code == 0, doc
    assert doc["pipeline"] == CLASS_COUNTS[(name, endo)][:7]


def test_twisted_zn_id(capsys):
    code, out, _ = run(capsys, "twisted", "zn", "--endo", "id", "--terms", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["series"] == {"num": [1, 2, 1], "den": [1, -3, 3, -1]}
    assert doc["coefficients"] == [1, 5, 13, 25, 41]


def test_twisted_debug_sets(capsys):
    code, out, _ = run(capsys, "twisted", "z_phi_neg", "--endo", "neg", "--debug-sets")
    assert code == 0 and json.loads(out)["sets"]


def test_growth_and_relative(capsys):
    code, out, _ = run(capsys, "growth", "zn", "--terms", "4")
    assert code == 0 and json.loads(out)["coefficients"] == [1, 5, 13, 25]
    code, out, _ = run(capsys, "relative", "z_phi_neg", "--endo", "neg", "--element", "", "--terms", "6")
    assert code == 0 and json.loads(out)["coefficients"] == [1, 1, 3, 3, 5, 5]
    code, out, _ = run(capsys, "relative", "zn", "--endo", "id", "--element", "e1,e2", "--terms", "4")
    assert json.loads(out)["coefficients"] == [0, 0, 1, 1]


def test_oracle_csv(capsys):
    code, out, _ = run(capsys, "oracle", "z_phi_neg", "--endo", "neg", "--radius", "2")
    assert code == 0
    assert out.splitlines() == ["r,beta,c_phi", "0,1,1", "1,3,2", "2,5,2"]


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "dihedral")
    assert code == 0 and json.loads(out)["valid"]
    obj = json.loads(bundled_path("dihedral").read_text(encoding="utf-8"))
    for e in obj["mult"]:
        if (e["left"], e["right"]) == ("b", "b"):
            e["x"], e["t"] = [1], "1"
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(obj), encoding="utf-8")
    code, out, _ = run(capsys, "validate", str(bad))
    report = json.loads(out)
    assert code == 2
    assert any(i["check"] == "associativity" and len(i["witness"]) == 3 for i in report["issues"])
    code, _, err = run(capsys, "twisted", str(bad), "--endo", "id")
    assert code == 2 and "associativity" in err


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "twisted", "zn", "--endo", "nope")[0] == 2
    assert run(capsys, "twisted", str(tmp_path / "missing.json"), "--endo", "id")[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json", encoding="utf-8")
    assert run(capsys, "growth", str(junk))[0] == 2
    assert run(capsys, "growth", "zn", "--terms", "0")[0] == 2


def test_pattern_cap_exit(capsys):
    code, _, err = run(capsys, "twisted", "dihedral", "--endo", "id", "--pattern-cap", "3")
    assert code == 3 and "cap" in err


def test_invariant_breach_exit(capsys):
    code, _, err = run(capsys, "twisted", "dihedral", "--endo", "id", "--method", "tuples")
    assert code == 4 and "not injective" in err


def test_reverse_and_seed_flags(capsys):
    a = json.loads(run(capsys, "twisted", "dihedral", "--endo", "flip")[1])
    b = json.loads(run(capsys, "twisted", "dihedral", "--endo", "flip", "--reverse-order", "--seed", "9")[1])
    assert a["series"] == b["series"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twistgrowth.cli", "twisted", "z_phi_neg", "--endo", "double",
                           "--terms", "3"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["coefficients"] == [1, 1, 1]
