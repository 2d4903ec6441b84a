"""End-to-end command-line behavior: files, determinism, exit codes."""

import json

import pytest

from swiptdas.cli import CSV_COLUMNS, main, sweep_csv_path

SWEEP_INI = """
[power]
total_power_dbm = 43.0
controller_power_ratio = 0.625

[solver]
seed = 20240817

[sweep]
power_start_dbm = 40.0
power_stop_dbm = 42.0
power_step_db = 2.0
num_trials = 6
"""


@pytest.fixture()
def sweep_ini(tmp_path):
    path = tmp_path / "small.ini"
    path.write_text(SWEEP_INI)
    return str(path)


def _read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_sweep_writes_expected_files(sweep_ini, tmp_path, capsys):
    out = tmp_path / "results"
    assert main(["sweep", sweep_ini, "--out", str(out)]) == 0
    for problem in ("max-sum", "max-min"):
        csv_path = sweep_csv_path(str(out), problem)
        lines = _read(csv_path).decode().strip().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        rows = [ln.split(",") for ln in lines[1:]]
        assert len(rows) == 2 * 3  # two sweep points, three schemes
        assert [r[0] for r in rows] == ["40"] * 3 + ["42"] * 3
        assert [r[1] for r in rows[:3]] == ["das-noma", "noma-only", "das-oma"]
        for r in rows:
            float(r[2])  # objective parses
            assert 0.0 <= float(r[3]) <= 1.0
            assert int(r[8]) == 6
            assert 0 <= int(r[9]) <= 6
    sidecar = json.loads(_read(out / "config.json"))
    assert sidecar["csv_columns"] == list(CSV_COLUMNS)
    assert sidecar["config"]["seed"] == 20240817
    assert sidecar["config"]["sweep_num_trials"] == 6


def test_sweep_deterministic_across_runs_and_threads(sweep_ini, tmp_path, capsys):
    out_a, out_b, out_c = (tmp_path / n for n in ("a", "b", "c"))
    assert main(["sweep", sweep_ini, "--out", str(out_a)]) == 0
    assert main(["sweep", sweep_ini, "--out", str(out_b)]) == 0
    assert main(["sweep", sweep_ini, "--out", str(out_c), "--threads", "3"]) == 0
    for problem in ("max-sum", "max-min"):
        ref = _read(sweep_csv_path(str(out_a), problem))
        assert _read(sweep_csv_path(str(out_b), problem)) == ref
        assert _read(sweep_csv_path(str(out_c), problem)) == ref


def test_sweep_trials_override(sweep_ini, tmp_path, capsys):
    out = tmp_path / "o"
    assert main(["sweep", sweep_ini, "--out", str(out), "--trials", "3"]) == 0
    lines = _read(sweep_csv_path(str(out), "max-sum")).decode().strip().split("\n")
    assert all(row.split(",")[8] == "3" for row in lines[1:])


def test_sidecar_round_trips_as_config(sweep_ini, tmp_path, capsys):
    out_a = tmp_path / "a"
    assert main(["sweep", sweep_ini, "--out", str(out_a)]) == 0
    out_b = tmp_path / "b"
    assert main(["sweep", str(out_a / "config.json"), "--out", str(out_b)]) == 0
    for problem in ("max-sum", "max-min"):
        assert _read(sweep_csv_path(str(out_b), problem)) == _read(
            sweep_csv_path(str(out_a), problem)
        )


def test_bad_config_exits_two_naming_field(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[power]\ncontroller_power_ratio = 1.2\n")
    assert main(["sweep", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "controller_power_ratio" in capsys.readouterr().err


def test_unknown_key_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[power]\ntotal_power_watts = 20\n")
    assert main(["sweep", str(bad), "--out", str(tmp_path / "o")]) == 2
    assert "total_power_watts" in capsys.readouterr().err


def test_missing_config_exits_two(tmp_path, capsys):
    assert main(["sweep", str(tmp_path / "nope.ini"), "--out", str(tmp_path)]) == 2


def test_validate_passes_small_run(tmp_path, capsys):
    ini = tmp_path / "v.ini"
    ini.write_text("[solver]\nseed = 7\ngrid_points_alpha = 101\ngrid_points_p2 = 101\n")
    assert main(["validate", str(ini), "--instances", "25"]) == 0
    out = capsys.readouterr().out
    assert "max-sum: pass" in out
    assert "max-min: pass" in out


def test_validate_refuses_coarse_grid(tmp_path, capsys):
    ini = tmp_path / "v.ini"
    ini.write_text("[solver]\ngrid_points_alpha = 41\n")
    assert main(["validate", str(ini), "--instances", "5"]) == 2
    assert ">= 51" in capsys.readouterr().err


def test_validate_refuses_zero_instances(tmp_path, capsys):
    ini = tmp_path / "v.ini"
    ini.write_text("[solver]\nseed = 7\n")
    assert main(["validate", str(ini), "--instances", "0"]) == 2


def test_single_trial_json(sweep_ini, capsys):
    assert main(["single", sweep_ini, "--trial", "3"]) == 0
    first = capsys.readouterr().out
    payload = json.loads(first)
    assert payload["trial_index"] == 3
    assert len(payload["realization_hash"]) == 16
    assert set(payload["solutions"]) == {"das-noma", "noma-only", "das-oma"}
    for per_problem in payload["solutions"].values():
        assert set(per_problem) == {"max-sum", "max-min"}
        for sol in per_problem.values():
            assert ("outage_reason" in sol) and ("objective_bpshz" in sol)
            if sol["outage"]:
                assert sol["objective_bpshz"] == 0.0
    assert payload["derived_params"]["p_rru"] > 0.0
    assert payload["derived_params_single_site"]["p_rru"] == 0.0
    # reruns print byte-identical reports
    assert main(["single", sweep_ini, "--trial", "3"]) == 0
    assert capsys.readouterr().out == first


def test_single_perfect_csi_flag(sweep_ini, capsys):
    assert main(["single", sweep_ini, "--trial", "1", "--perfect-csi"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["derived_params"]["err_power_weak"] == 0.0
    assert payload["derived_params"]["err_power_strong"] == 0.0


def test_single_seed_override(sweep_ini, capsys):
    assert main(["single", sweep_ini, "--seed", "42"]) == 0
    a = json.loads(capsys.readouterr().out)
    assert a["seed"] == 42
    assert main(["single", sweep_ini, "--seed", "43"]) == 0
    b = json.loads(capsys.readouterr().out)
    assert a["realization_hash"] != b["realization_hash"]
