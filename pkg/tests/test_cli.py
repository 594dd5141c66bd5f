from __future__ import annotations

import json

import pytest

from rschoice.cli import main
from rschoice.core import serialize_choice_function, serialize_structure_json
from rschoice.fixtures import detergent_choice, worked_structure
from rschoice.axioms import tsm_choice, tsm_fixture_nrs_violation


@pytest.fixture
def detergent_file(tmp_path):
    path = tmp_path / "detergent.json"
    path.write_text(serialize_choice_function(detergent_choice()))
    return str(path)


@pytest.fixture
def tsm1_file(tmp_path):
    path = tmp_path / "tsm1.json"
    path.write_text(serialize_choice_function(tsm_choice(tsm_fixture_nrs_violation())))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_axioms_exit_codes(capsys, detergent_file, tsm1_file):
    code, out, _ = run(capsys, "check-axioms", detergent_file)
    verdicts = {v["axiom"]: v["holds"] for v in json.loads(out)}
    assert code == 0
    assert verdicts == {"Exp": True, "NRS": True, "IR": True, "SPR": True, "IIA": False}
    code, out, _ = run(capsys, "check-axioms", tsm1_file)
    verdicts = {v["axiom"]: v["holds"] for v in json.loads(out)}
    assert code == 1
    assert verdicts["NRS"] is False


def test_synthesize_detergent(capsys, detergent_file):
    code, out, _ = run(capsys, "synthesize", detergent_file)
    assert code == 0
    doc = json.loads(out)
    assert doc["structure"]["types"] == [["x", "y"], ["z"]]
    assert doc["certificate"]["verified"] is True


def test_synthesize_axiom_failure_exits_one(capsys, tsm1_file):
    code, out, _ = run(capsys, "synthesize", tsm1_file)
    assert code == 1
    doc = json.loads(out)
    assert doc["error"] == "axiom-violation"
    assert any(v["axiom"] == "NRS" and not v["holds"] for v in doc["verdicts"])


def test_reveal_cross_check(capsys, detergent_file):
    code, out, _ = run(capsys, "reveal", detergent_file, "--cross-check")
    assert code == 0
    doc = json.loads(out)
    assert doc["reaction"] == [["x", "y"]]
    assert doc["definition_cross_check"] == {
        "only_in_triple_scan": [],
        "only_in_menu_scan": [],
    }


def test_welfare_subcommand(capsys, detergent_file):
    code, out, _ = run(capsys, "welfare", detergent_file)
    assert code == 0
    doc = json.loads(out)
    assert ["y", "x"] in doc["welfare_improving"]


def test_freedom_subcommand(capsys, tmp_path):
    path = tmp_path / "structure.json"
    path.write_text(serialize_structure_json(worked_structure()))
    code, out, _ = run(capsys, "freedom", str(path))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "menu,n"
    assert len(lines) == 8
    assert all(line.endswith(",0") for line in lines[1:])


def test_simulate_media(capsys):
    code, out, _ = run(capsys, "simulate-media", "--p", "0.46", "--lambda", "0.7", "--menu", "N")
    assert code == 0
    doc = json.loads(out)
    assert doc["chosen_source"] == "sigmaRR"
    assert doc["action_by_signal"]["sR"] == "r"


def test_simulate_media_rejects_bad_params(capsys):
    code, _, err = run(capsys, "simulate-media", "--p", "0.6", "--lambda", "0.7", "--menu", "N")
    assert code == 2
    assert json.loads(err)["error"] == "invalid-params"


def test_simulate_culture_summary_and_trajectory(capsys, tmp_path):
    traj = tmp_path / "traj.csv"
    code, out, _ = run(
        capsys,
        "simulate-culture",
        "--beta", "2", "--g-hat", "2", "--v-hat", "2", "--lambda-r", "2",
        "--g", "1", "--q0", "0.3", "--horizon", "60",
        "--trajectory-out", str(traj),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["q_steady"] == pytest.approx(0.5)
    assert doc["converged"] is True
    lines = traj.read_text().strip().splitlines()
    assert lines[0] == "tau,q"
    assert len(lines) > 10


def test_sweep_media_flips_at_pstar(capsys):
    code, out, _ = run(
        capsys, "sweep", "media", "--lambda-range", "0.7:0.7:1", "--p-range", "0.40:0.49:10"
    )
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    chosen = [r[3] for r in rows]
    pstar = float(rows[0][6])
    flip = next(i for i, c in enumerate(chosen) if c == "sigmaRR")
    assert chosen[:flip] == ["sigmaL"] * flip
    assert all(c == "sigmaRR" for c in chosen[flip:])
    assert float(rows[flip - 1][0]) < pstar <= float(rows[flip][0]) + 0.01


def test_sweep_culture_rises_above_threshold(capsys):
    code, out, _ = run(capsys, "sweep", "culture", "--g-range", "2:6:9", "--lambda-r", "1.5")
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    q = [float(r[2]) for r in rows]
    assert all(b > a for a, b in zip(q, q[1:]))


def test_sweep_rejects_empty_range(capsys):
    code, _, err = run(capsys, "sweep", "culture", "--g-range", "4:2:5")
    assert code == 2
    assert json.loads(err)["error"] == "invalid-range"


def test_enumerate_count(capsys):
    code, out, _ = run(capsys, "enumerate", "--options", "x,y,z", "--count-only")
    assert code == 0
    assert json.loads(out) == {"count": 24}


def test_enumerate_stream_limit(capsys):
    code, out, _ = run(capsys, "enumerate", "--options", "x,y", "--limit", "1")
    assert code == 0
    docs = [json.loads(line) for line in out.strip().splitlines()]
    assert len(docs) == 1
    assert docs[0]["choices"]["x,y"] in ("x", "y")


def test_missing_file_is_a_coded_error(capsys):
    code, _, err = run(capsys, "check-axioms", "/no/such/file.json")
    assert code == 2
    assert json.loads(err)["error"] == "file-not-found"


def test_seed_env_var_sets_default(capsys, monkeypatch):
    monkeypatch.setenv("RSCHOICE_SEED", "99")
    _, with_env, _ = run(capsys, "sweep", "media", "--samples", "20")
    monkeypatch.delenv("RSCHOICE_SEED")
    _, explicit, _ = run(capsys, "--seed", "99", "sweep", "media", "--samples", "20")
    assert with_env == explicit


def test_repeated_runs_are_byte_identical(capsys, detergent_file):
    _, first, _ = run(capsys, "synthesize", detergent_file)
    _, second, _ = run(capsys, "synthesize", detergent_file)
    assert first == second
    _, s1, _ = run(capsys, "sweep", "media", "--lambda-range", "0.6:0.7:3",
                   "--p-range", "0.1:0.4:5")
    _, s2, _ = run(capsys, "sweep", "media", "--lambda-range", "0.6:0.7:3",
                   "--p-range", "0.1:0.4:5")
    assert s1 == s2
