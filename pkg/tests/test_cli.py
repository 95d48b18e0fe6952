from __future__ import annotations

import json
from pathlib import Path

import pytest

from orbitstab.cli import load_scene, main
from orbitstab.errors import ParseError

SCENES = Path(__file__).resolve().parents[1] / "scenes"


def call(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


def scene(name):
    return SCENES / f"{name}.json"


def test_orbit(capsys):
    code, out = call(capsys, "orbit", "--scene", scene("sqrt2"), "--aut", "phi", "--point", "p", "-N", 3)
    assert code == 0 and out["orbit"]["size"] == 7


def test_closure_hat(capsys):
    code, out = call(capsys, "closure", "--scene", scene("sqrt2"), "--set", "Delta", "--hat")
    assert code == 0
    assert out["hat_vs_bar"]["hat_generators"] == ["y", "x^2 - 2"]
    assert out["trichotomy"]["verdict"] == "finite"


def test_classify_and_stabilizer(capsys):
    code, out = call(capsys, "classify", "--scene", scene("torus_t3"), "--curve", "C")
    assert code == 0 and out["curve"]["type"] == "T3"
    code, out = call(capsys, "stabilizer", "--scene", scene("torus_t3"), "--curve", "C", "--point", "p", "--group", "H2")
    assert code == 0 and out["stabilizer"]["case_tag"] == "A0_index2_extension"


def test_cyclic_and_membership(capsys):
    code, out = call(capsys, "cyclic", "--scene", scene("line"), "--aut", "phi", "--point", "o")
    assert code == 0 and out["stabilizer"]["case_tag"] == "Cyclic_c"
    code, out = call(
        capsys, "membership", "--scene", scene("line"), "--aut", "phi", "--point", "o", "--psi", "stretch", "--with-stabilizer"
    )
    assert out["membership"]["verdict"] == "in"


def test_isotropy(capsys):
    code, out = call(capsys, "isotropy", "--scene", scene("conic_t4"), "--curve", "circle", "--point", "p")
    assert code == 0 and len(out["isotropy"]["elements"]) == 2


def test_char2(capsys):
    code, out = call(capsys, "classify", "--scene", scene("char2_t5"), "--curve", "C")
    assert code == 0 and out["curve"]["type"] == "T5"


def test_ddeg(capsys):
    code, out = call(capsys, "ddeg", "--scene", scene("henon"), "--aut", "phi", "-M", 5)
    assert out["ddeg"]["degrees"] == [2, 4, 8, 16, 32]


def test_exit_codes(capsys, tmp_path):
    code, out = call(capsys, "cyclic", "--scene", scene("henon"), "--aut", "phi", "--point", "q")
    assert code == 2 and out["error"] == "HypothesisError"
    code, out = call(capsys, "ddeg", "--scene", scene("henon"), "--aut", "phi", "-M", 30, "--bit-cap", 200)
    assert code == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": ')
    code, out = call(capsys, "orbit", "--scene", bad, "--aut", "phi", "--point", "p")
    assert code == 1 and "line" in out["message"]


def test_not_in_group(capsys):
    code, out = call(capsys, "stabilizer", "--scene", scene("torus_t3"), "--curve", "C", "--point", "p", "--aut", "scale3")
    assert code == 2 and out["error"] == "NotInGroupError"


def test_deterministic(capsys):
    argv = ("cyclic", "--scene", scene("torus_t3"), "--aut", "half", "--point", "p")
    a = call(capsys, *argv)
    b = call(capsys, *argv)
    assert a == b


def test_verify_custom_grid(capsys, tmp_path):
    g = tmp_path / "grid.json"
    g.write_text(json.dumps({"T3": [3]}))
    out_file = tmp_path / "report.json"
    code, out = call(capsys, "verify", "--grid", g, "--out", out_file)
    assert code == 0 and out["report"]["match_rate"] == 1.0
    assert "records" in json.loads(out_file.read_text())


def test_unknown_option_rejected(tmp_path):
    s = tmp_path / "s.json"
    s.write_text(json.dumps({"field": {"kind": "rationals"}, "options": {"Q": 1}}))
    with pytest.raises(ParseError):
        load_scene(s)
