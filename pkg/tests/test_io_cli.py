import json
import os
import subprocess
import sys

import numpy as np
import pytest

from qugame.cli import main
from qugame.csd import csd4, factors_to_circuit
from qugame.exceptions import GameFormatError
from qugame.hilbert import random_unitary
from qugame.io import (
    circuit_from_json,
    circuit_to_json,
    complex_from_json,
    load_game,
    load_matrix,
    matrix_from_json,
    matrix_to_json,
    sig12,
)

GAMES = ("G", "matching_pennies", "prisoners_dilemma")


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def game_files(tmp_path, capsys):
    assert run(["builtin", "--out-dir", str(tmp_path)], capsys)[0] == 0
    return {name: str(tmp_path / f"{name}.json") for name in GAMES}


@pytest.fixture
def identity_file(tmp_path):
    return write(tmp_path / "eye.json", matrix_to_json(np.eye(4)))


def test_complex_and_matrix_json():
    assert complex_from_json([1, -2.5]) == complex(1, -2.5)
    with pytest.raises(GameFormatError, match=r"\$\[0\]\[1\]"):
        matrix_from_json([[[1, 0], "x"]])
    with pytest.raises(GameFormatError):
        complex_from_json([1, float("nan")])
    with pytest.raises(GameFormatError):
        complex_from_json([True, 0])


def test_circuit_json_is_bit_faithful():
    circuit = factors_to_circuit(csd4(random_unitary(4, 3)))
    text = json.dumps(circuit_to_json(circuit))
    back = circuit_from_json(json.loads(text))
    for g, h in zip(circuit, back):
        assert (g.control_wire, g.control_value, g.target_wire) == (h.control_wire, h.control_value, h.target_wire)
        assert np.array_equal(g.gate, h.gate)
    assert json.dumps(circuit_to_json(back)) == text


def test_circuit_json_errors():
    with pytest.raises(GameFormatError, match=r"\$\[0\]\.gate"):
        circuit_from_json([{"control_wire": 1, "control_value": 0, "target_wire": 2}])
    with pytest.raises(GameFormatError, match=r"\$\[0\]"):
        circuit_from_json([{"control_wire": 1, "control_value": 0, "target_wire": 1, "gate": matrix_to_json(np.eye(2))}])


def test_load_matrix_forms(tmp_path):
    bare = write(tmp_path / "a.json", matrix_to_json(np.eye(4)))
    wrapped = write(tmp_path / "b.json", {"matrix": matrix_to_json(np.eye(4))})
    assert np.array_equal(load_matrix(bare), load_matrix(wrapped))
    bad = write(tmp_path / "c.json", {"matrix": matrix_to_json(np.eye(3))})
    with pytest.raises(GameFormatError, match="c.json:matrix"):
        load_matrix(bad)


def test_load_game_error_paths(tmp_path):
    p = write(tmp_path / "g.json", {"players": 2})
    with pytest.raises(GameFormatError, match="g.json"):
        load_game(p)
    (tmp_path / "broken.json").write_text("{")
    with pytest.raises(GameFormatError, match="invalid JSON"):
        load_game(str(tmp_path / "broken.json"))
    with pytest.raises(GameFormatError, match="cannot read"):
        load_game(str(tmp_path / "missing.json"))


def test_sig12():
    assert sig12(0.5) == "0.5"
    assert sig12(1 / 3) == "0.333333333333"


def test_builtin_single_is_bare_game(tmp_path, capsys):
    code, out, _ = run(["builtin", "G"], capsys)
    assert code == 0
    path = write(tmp_path / "g.json", json.loads(out))
    assert load_game(path).name


def test_builtin_list(capsys):
    code, out, _ = run(["builtin"], capsys)
    assert code == 0 and json.loads(out)["result"]["games"] == sorted(GAMES)
    assert run(["builtin", "nope"], capsys)[0] == 2


def test_analyze_outputs(game_files, capsys):
    code, out, _ = run(["analyze", game_files["prisoners_dilemma"]], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["command"] == "analyze"
    assert rep["result"]["pure_nash"] == [["D", "D"]]
    code, out, _ = run(["analyze", game_files["matching_pennies"]], capsys)
    assert json.loads(out)["result"]["pure_nash"] == []
    code, out, _ = run(["analyze", game_files["G"]], capsys)
    assert json.loads(out)["result"]["pure_nash"] == [["H", "H"]]


def test_mix_matching_pennies(game_files, capsys):
    code, out, _ = run(["mix", game_files["matching_pennies"]], capsys)
    rep = json.loads(out)["result"]
    assert code == 0
    assert rep["equilibria"] == [[["0.5", "0.5"], ["0.5", "0.5"]]]
    assert rep["warnings"] == []


def test_quantize_counts(game_files, capsys):
    code, out, _ = run(["quantize", "ewl", "--game", game_files["prisoners_dilemma"], "--grid", "5"], capsys)
    rep = json.loads(out)["result"]
    assert code == 0
    assert rep["n_strategies"] == 25 and rep["n_profiles"] == 625 == len(rep["profiles"])
    assert rep["recovers_classical_game"]
    code, out, _ = run(
        ["quantize", "ewl", "--game", game_files["prisoners_dilemma"], "--grid", "3", "--full-phase"], capsys
    )
    assert json.loads(out)["result"]["n_profiles"] == 27**2


def test_quantize_bad_grid(game_files, capsys):
    code, _, err = run(["quantize", "ewl", "--game", game_files["G"], "--grid", "1"], capsys)
    assert code == 2 and "--grid" in err


def test_quantize_non_unitary_entangler(game_files, tmp_path, capsys):
    bad = write(tmp_path / "bad.json", matrix_to_json(np.ones((4, 4))))
    code, _, err = run(["quantize", "ewl", "--game", game_files["G"], "--grid", "2", "--entangler", bad], capsys)
    assert code == 2


def test_qnash_identity(identity_file, capsys):
    code, out, _ = run(["qnash", "--unitary", identity_file, "--target-i", "2", "--target-ii", "3"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["config"]["seed"] == 1729
    runs = rep["result"]["runs"]
    assert len(runs) == 4
    for r in runs:
        assert r["status"] == "converged"
        assert r["nash_check"]["is_equilibrium"]


def test_qnash_bad_target(identity_file, capsys):
    assert run(["qnash", "--unitary", identity_file, "--target-i", "5", "--target-ii", "3"], capsys)[0] == 2


def test_csd_identity(identity_file, tmp_path, capsys):
    code, out, _ = run(["csd", "--unitary", identity_file], capsys)
    rep = json.loads(out)["result"]
    assert code == 0 and rep["n_gates"] == 6 and rep["reconstruction_error"] < 1e-10
    circ = tmp_path / "circ.json"
    code, out, _ = run(["csd", "--unitary", identity_file, "--emit-circuit", str(circ)], capsys)
    assert code == 0 and len(circuit_from_json(json.loads(circ.read_text()))) == 6


def test_csd_analysis_failure_exit_one(identity_file, capsys, monkeypatch):
    import qugame.cli as cli

    monkeypatch.setattr(cli, "circuit_to_unitary", lambda c: np.eye(4) * 1j)
    code, out, err = run(["csd", "--unitary", identity_file], capsys)
    assert code == 1 and "reconstruction error" in err
    assert json.loads(out)["result"]["reconstruction_error"] >= 1e-10


def test_normalization_failure_exit_one(game_files, capsys, monkeypatch):
    import qugame.ewl as ewl

    monkeypatch.setattr(ewl, "RAW_NORM", 3.0)
    monkeypatch.setattr(ewl, "_states", lambda *a, **k: ewl.ewl_formula([1, 0], [1, 0]))
    code, _, _ = run(
        ["quantize", "ewl", "--game", game_files["G"], "--grid", "2", "--construction", "formula"], capsys
    )
    assert code == 1


@pytest.mark.parametrize(
    "content",
    ["{", "[]", '{"players": 2, "strategies": [["a","b"],["c","d"]], "outcomes": [], "payoffs": {}}'],
)
def test_malformed_game_exit_two(tmp_path, capsys, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, out, err = run(["analyze", str(p)], capsys)
    assert code == 2 and out == "" and "bad.json" in err


def test_non_unitary_exit_two(tmp_path, capsys):
    bad = write(tmp_path / "m.json", matrix_to_json(2 * np.eye(4)))
    assert run(["csd", "--unitary", bad], capsys)[0] == 2
    assert run(["qnash", "--unitary", bad, "--target-i", "2", "--target-ii", "3"], capsys)[0] == 2


def test_output_file(game_files, tmp_path, capsys):
    out_path = tmp_path / "rep.json"
    code, out, _ = run(["analyze", game_files["G"], "-o", str(out_path)], capsys)
    assert code == 0 and out == ""
    assert json.loads(out_path.read_text())["config"]["output"] == str(out_path)


def test_determinism_byte_identical(game_files, identity_file, tmp_path, capsys):
    u = write(tmp_path / "u.json", matrix_to_json(random_unitary(4, 42)))
    commands = [
        ["analyze", game_files["G"]],
        ["mix", game_files["matching_pennies"]],
        ["quantize", "ewl", "--game", game_files["prisoners_dilemma"], "--grid", "3"],
        ["qnash", "--unitary", u, "--target-i", "2", "--target-ii", "3"],
        ["csd", "--unitary", u],
    ]
    for argv in commands:
        first = run(argv, capsys)[1]
        second = run(argv, capsys)[1]
        assert first == second and first


def test_seed_environment(identity_file, monkeypatch, capsys):
    argv = ["qnash", "--unitary", identity_file, "--target-i", "2", "--target-ii", "3"]
    monkeypatch.setenv("QUGAME_SEED", "7")
    assert json.loads(run(argv, capsys)[1])["config"]["seed"] == 7
    assert json.loads(run(argv + ["--seed", "9"], capsys)[1])["config"]["seed"] == 9


def test_module_entry_point_help():
    env = dict(os.environ)
    res = subprocess.run([sys.executable, "-m", "qugame", "--help"], capture_output=True, text=True, env=env)
    assert res.returncode == 0
    for sub in ("analyze", "mix", "quantize", "qnash", "csd", "builtin"):
        assert sub in res.stdout
