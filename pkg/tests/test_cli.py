"""Command-line interface: exit codes, JSON output, sweeps, determinism."""

import json
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from commgames import (
    GameSpec,
    MixedStrategy,
    QubitStrategy,
    check_game,
    strict_game,
    uniform_game,
    visit_matrix_mixed,
    visit_matrix_qubit,
)
from commgames.cli import main


def write_game(tmp_path, spec, name="game.json"):
    path = tmp_path / name
    path.write_text(spec.to_json())
    return str(path)


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_check_win_and_lose(tmp_path, capsys):
    spec = GameSpec(gamma=(2 / 3, 0.2, 2 / 15))
    game = write_game(tmp_path, spec)
    winning = tmp_path / "win.json"
    winning.write_text(MixedStrategy(alpha=(0.0, 1.0, 1.0), r=(1.0, 0.0, 0.0),
                                     q=(0.0, 0.6, 0.4)).to_json())
    losing = tmp_path / "lose.json"
    losing.write_text(MixedStrategy(alpha=(1.0, 1.0, 1.0), r=(0.0, 0.5, 0.5),
                                    q=(1.0, 0.0, 0.0)).to_json())

    code, out = run(capsys, ["check", "--game", game, "--strategy", str(winning)])
    obj = json.loads(out)
    assert code == 0 and obj["wins"] and obj["witness"] is None

    code, out = run(capsys, ["check", "--game", game, "--strategy", str(losing)])
    obj = json.loads(out)
    assert code == 2 and not obj["wins"]
    assert "≠" in obj["witness"]


def test_check_writes_matrix_file(tmp_path, capsys):
    game = write_game(tmp_path, uniform_game(3))
    strat = tmp_path / "s.json"
    strat.write_text(MixedStrategy(alpha=(1.0, 0.0, 0.5),
                                   r=(0.0, 0.5, 0.5),
                                   q=(0.5, 0.0, 0.5)).to_json())
    matrix = tmp_path / "vm.json"
    code, _ = run(capsys, ["check", "--game", game, "--strategy", str(strat),
                           "--matrix", str(matrix)])
    obj = json.loads(matrix.read_text())
    assert obj["orientation"] == "closed-major"
    assert len(obj["p"]) == 3


def test_malformed_json_reports_position(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "gamma": [0.3, 0.3')
    with pytest.raises(SystemExit) as exc:
        main(["check", "--game", str(bad), "--strategy", str(bad)])
    msg = str(exc.value.code)
    assert msg.startswith("error: malformed JSON")
    assert "line" in msg and "column" in msg


def test_dimension_mismatch_is_an_error(tmp_path, capsys):
    game = write_game(tmp_path, uniform_game(4))
    strat = tmp_path / "s3.json"
    strat.write_text(MixedStrategy(alpha=(1.0, 0.0, 0.5), r=(0.0, 0.5, 0.5),
                                   q=(0.5, 0.0, 0.5)).to_json())
    with pytest.raises(SystemExit) as exc:
        main(["check", "--game", game, "--strategy", str(strat)])
    assert "mismatch" in str(exc.value.code)


def test_usage_errors_exit_one(capsys):
    assert main(["--no-such-flag"]) == 1
    assert main(["check"]) == 1
    assert main(["--help"]) == 0


def test_synth_cbit_facet_game(tmp_path, capsys):
    spec = GameSpec(gamma=(0.3, 0.2, 0.1, 0.4))
    game = write_game(tmp_path, spec)
    code, out = run(capsys, ["synth", "--game", game, "--resource", "cbit"])
    assert code == 0
    s = MixedStrategy.from_json(out)
    assert check_game(spec, visit_matrix_mixed(s), tol=1e-9).wins


def test_synth_cbit_honest_negative(tmp_path, capsys):
    game = write_game(tmp_path, uniform_game(3))
    code, out = run(capsys, ["synth", "--game", game, "--resource", "cbit"])
    assert code == 2
    assert json.loads(out) == {"feasible": False, "resource": "cbit"}
    strict4 = write_game(tmp_path, strict_game(4), "s4.json")
    code, out = run(capsys, ["synth", "--game", strict4, "--resource", "cbit"])
    assert code == 2


def test_synth_qubit_routes(tmp_path, capsys):
    for spec in [uniform_game(5), strict_game(4),
                 GameSpec(gamma=(0.4, 0.2, 0.2, 0.2)),
                 GameSpec(gamma=(0.1, 0.5, 0.4))]:
        game = write_game(tmp_path, spec)
        code, out = run(capsys, ["synth", "--game", game, "--resource", "qubit"])
        assert code == 0
        s = QubitStrategy.from_json(out)
        assert check_game(spec, visit_matrix_qubit(s), tol=1e-9).wins


def test_synth_polygon_routes(tmp_path, capsys):
    from commgames import PolygonStrategy, visit_matrix_polygon

    cases = [(GameSpec(gamma=(0.55, 0.25, 0.2)), "polygon:4"),
             (strict_game(3), "polygon:6"),
             (uniform_game(4), "polygon:8")]
    for spec, resource in cases:
        game = write_game(tmp_path, spec)
        code, out = run(capsys, ["synth", "--game", game, "--resource", resource])
        assert code == 0
        s = PolygonStrategy.from_json(out)
        assert check_game(spec, visit_matrix_polygon(s), tol=1e-9).wins


def test_synth_capability_error_lists_supported(tmp_path, capsys):
    game = write_game(tmp_path, GameSpec(gamma=(0.3, 0.3, 0.2, 0.1, 0.05, 0.05)))
    with pytest.raises(SystemExit) as exc:
        main(["synth", "--game", game, "--resource", "qubit"])
    assert "supported synth combinations" in str(exc.value.code)
    with pytest.raises(SystemExit) as exc:
        main(["synth", "--game", game, "--resource", "ebit"])
    assert "polygon:<n>" in str(exc.value.code)


def test_feasibility_cbit(tmp_path, capsys):
    game = write_game(tmp_path, GameSpec(gamma=(0.4, 0.2, 0.2, 0.2)))
    code, out = run(capsys, ["feasibility", "--game", game])
    obj = json.loads(out)
    assert code == 2
    assert not obj["feasible"]
    assert obj["partitions_checked"] == 14
    game = write_game(tmp_path, GameSpec(gamma=(0.25, 0.25, 0.3, 0.2)), "f.json")
    code, out = run(capsys, ["feasibility", "--game", game])
    obj = json.loads(out)
    assert code == 0 and obj["feasible"] and obj["certificate"] is not None


def test_feasibility_unbounded_sr(tmp_path, capsys):
    game = write_game(tmp_path, uniform_game(3))
    code, out = run(capsys, ["feasibility", "--game", game,
                             "--resource", "unbounded-sr"])
    obj = json.loads(out)
    assert code == 0 and obj["feasible"] and obj["exact"]
    assert_allclose(sum(w["weight"] for w in obj["witness"]), 1.0, atol=1e-9)


def test_sweep_game_space(tmp_path, capsys):
    code, out = run(capsys, ["sweep", "game-space", "--grid", "8"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "gamma1,gamma2,gamma3,label"
    labels = {line.rsplit(",", 1)[1] for line in lines[1:]}
    assert labels <= {"unphysical", "mixed-winnable", "sr-winnable"}
    assert "sr-winnable" in labels and "unphysical" in labels


def test_sweep_locus(capsys):
    code, out = run(capsys, ["sweep", "locus", "--gamma1", "0.4", "--num", "9"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "gamma1,theta2,theta3,gamma2,gamma3,mid_x,mid_z,residual"
    assert len(lines) > 1
    for line in lines[1:]:
        fields = [float(x) for x in line.split(",")]
        assert fields[0] == 0.4
        assert fields[-1] < 1e-9


def test_sweep_noise(capsys):
    code, out = run(capsys, ["sweep", "noise", "--num", "5"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "eps_e,eps_d,boundary_value,advantage"
    assert len(lines) == 26
    assert {line.rsplit(",", 1)[1] for line in lines[1:]} == {"true", "false"}


def test_montecarlo_rerun_is_byte_identical(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["montecarlo", "--samples", "20000", "--seed", "3",
                 "-o", str(a)]) == 0
    assert main(["montecarlo", "--samples", "20000", "--seed", "3",
                 "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    obj = json.loads(a.read_text())
    assert obj["samples"] == 20000 and obj["seed"] == 3
    assert obj["refined_min"] <= obj["raw_sample_min"]


def test_seed_env_variable_fallback(tmp_path, capsys, monkeypatch):
    flagged = tmp_path / "flag.json"
    env = tmp_path / "env.json"
    assert main(["montecarlo", "--samples", "10000", "--seed", "11",
                 "-o", str(flagged)]) == 0
    monkeypatch.setenv("COMMGAMES_SEED", "11")
    assert main(["montecarlo", "--samples", "10000", "-o", str(env)]) == 0
    assert flagged.read_bytes() == env.read_bytes()
    monkeypatch.setenv("COMMGAMES_SEED", "not-a-number")
    with pytest.raises(SystemExit):
        main(["montecarlo", "--samples", "10000"])


def test_nsbox_pr(capsys):
    code, out = run(capsys, ["nsbox", "--pr"])
    obj = json.loads(out)
    assert code == 0
    assert obj["chsh"] == 4.0
    assert obj["cup"]["average"] == 1.0
    assert_allclose(obj["classical_cup_bound"], 5 / 6, atol=0)


def test_worstcase_resources(capsys):
    code, out = run(capsys, ["worstcase", "--resource", "cbit",
                             "--starts", "2000", "--seed", "5"])
    obj = json.loads(out)
    assert code == 0
    assert obj["bound"] == 0.5
    assert obj["numeric_max"] <= 0.5 + 1e-9
    for resource in ("cbit-sr", "qubit"):
        code, out = run(capsys, ["worstcase", "--resource", resource])
        obj = json.loads(out)
        assert code == 0
        assert_allclose(obj["worst_case_success"], 2 / 3, atol=1e-12)


def test_module_entry_point_runs(tmp_path):
    game = tmp_path / "g.json"
    game.write_text(uniform_game(4).to_json())
    proc = subprocess.run(
        [sys.executable, "-m", "commgames.cli", "feasibility",
         "--game", str(game)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["feasible"]
