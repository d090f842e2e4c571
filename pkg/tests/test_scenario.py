"""Run configs, snapshot files, scenario drivers, and the CLI."""

import configparser

import numpy as np
import pytest

from muskat.cli import main
from muskat.core import UNIT_PREFACTOR_DENSITY_JUMP, make_curve, make_grid, sample_preset
from muskat.scenario import (
    STATUS_ERROR,
    RunConfig,
    export_snapshot,
    import_snapshot,
    load_config,
    run_scenario,
)


def test_config_defaults():
    cfg = RunConfig()
    assert cfg.scenario == "BACKWARD_SEED"
    assert cfg.n == 2048
    assert cfg.density_jump == UNIT_PREFACTOR_DENSITY_JUMP
    assert cfg.dt == 4e-5
    assert cfg.eps == 1e-6
    assert cfg.resolved_t_final == -4.92e-2
    assert RunConfig(scenario="FORWARD_RERUN").resolved_t_final == 6e-2
    assert RunConfig(scenario="CONJ_TURNOVER").resolved_t_final == 0.3
    assert RunConfig(t_final=-1e-3).resolved_t_final == -1e-3


@pytest.mark.parametrize("kwargs, fragment", [
    ({"scenario": "SIDEWAYS"}, "scenario"),
    ({"n": 5}, "n: need an even grid size >= 16"),
    ({"n": 8}, "n: need an even grid size >= 16"),
    ({"dt": 0.0}, "dt: must be positive"),
    ({"snapshot_every": -1.0}, "snapshot_every"),
    ({"density_jump": 0.0}, "density_jump"),
    ({"eps": -1e-9}, "eps"),
    ({"mode": "verlet"}, "mode"),
    ({"delta": 1.5}, "delta"),
    ({"t_final": float("inf")}, "t_final"),
])
def test_config_validation_names_the_field(kwargs, fragment):
    with pytest.raises(ValueError, match=fragment):
        RunConfig(**kwargs)


def test_load_config_empty_file_is_all_defaults(tmp_path):
    path = tmp_path / "empty.ini"
    path.write_text("")
    assert load_config(path) == RunConfig()


def test_load_config_round_trips_fields(tmp_path):
    path = tmp_path / "run.ini"
    path.write_text(
        "[run]\nscenario = CONJ_TURNOVER\nout_dir = runs/conj\n"
        "[grid]\nn = 512\n"
        "[time]\ndt = 2e-5\nt_final = 0.25\nsnapshot_every = 5e-4\n"
        "[smoothing]\neps = 1e-7\n")
    cfg = load_config(path)
    assert cfg.scenario == "CONJ_TURNOVER"
    assert cfg.out_dir == "runs/conj"
    assert cfg.n == 512
    assert cfg.dt == 2e-5
    assert cfg.t_final == 0.25
    assert cfg.snapshot_every == 5e-4
    assert cfg.eps == 1e-7
    # untouched fields keep their defaults
    assert cfg.density_jump == UNIT_PREFACTOR_DENSITY_JUMP


def test_load_config_rejects_unknown_names(tmp_path):
    bad_section = tmp_path / "a.ini"
    bad_section.write_text("[turbulence]\nn = 16\n")
    with pytest.raises(ValueError, match=r"\[turbulence\]"):
        load_config(bad_section)

    bad_key = tmp_path / "b.ini"
    bad_key.write_text("[grid]\nm = 16\n")
    with pytest.raises(ValueError, match="'m'"):
        load_config(bad_key)

    bad_value = tmp_path / "c.ini"
    bad_value.write_text("[grid]\nn = seven\n")
    with pytest.raises(ValueError, match="bad value"):
        load_config(bad_value)

    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "missing.ini")


def test_export_format_is_pinned(tmp_path, flat64):
    path = tmp_path / "flat.dat"
    export_snapshot(flat64, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "# time = 0"
    assert lines[1] == "alpha, z1, z2, dz1, dz2"
    assert lines[2] == "-3.1415926535897931, -3.1415926535897931, 0, 1, 0"
    assert len(lines) == 2 + flat64.grid.n


def test_snapshot_round_trip(tmp_path, grid64):
    curve = sample_preset("SEED_T0", grid64)
    first = tmp_path / "a.dat"
    export_snapshot(curve, first, time=-0.0123456789012345)
    back, t = import_snapshot(first)
    assert t == -0.0123456789012345
    assert back.grid.n == grid64.n
    assert np.array_equal(back.z2, curve.z2)
    assert np.max(np.abs(back.z1 - curve.z1)) == 0.0

    # the file representation is a fixed point after one round trip (the
    # derivative columns of the original export may differ in the last ulp
    # because p1 is reconstructed as z1 - alpha)
    second = tmp_path / "b.dat"
    third = tmp_path / "c.dat"
    export_snapshot(back, second, time=t)
    again, _ = import_snapshot(second)
    export_snapshot(again, third, time=t)
    assert third.read_bytes() == second.read_bytes()


def test_import_rejects_malformed_files(tmp_path):
    bad_header = tmp_path / "h.dat"
    bad_header.write_text("x, y\n0, 0\n")
    with pytest.raises(ValueError, match="unexpected header"):
        import_snapshot(bad_header)

    empty = tmp_path / "e.dat"
    empty.write_text("# time = 0\nalpha, z1, z2, dz1, dz2\n")
    with pytest.raises(ValueError, match="no snapshot rows"):
        import_snapshot(empty)

    short_row = tmp_path / "s.dat"
    short_row.write_text("alpha, z1, z2, dz1, dz2\n0, 0, 0\n")
    with pytest.raises(ValueError, match="5 columns"):
        import_snapshot(short_row)

    skewed = tmp_path / "g.dat"
    rows = ["alpha, z1, z2, dz1, dz2"]
    rows += [f"{0.1 * i}, 0, 0, 1, 0" for i in range(16)]
    skewed.write_text("\n".join(rows) + "\n")
    with pytest.raises(ValueError, match="uniform grid"):
        import_snapshot(skewed)


def test_lemma_verify_scenario(tmp_path):
    cfg = RunConfig(scenario="LEMMA_VERIFY", out_dir=str(tmp_path / "lem"))
    manifest = run_scenario(cfg)
    assert manifest.status == "OK"
    report = (tmp_path / "lem" / "lemma_report.txt").read_text()
    assert "min_admissible_R = 18" in report
    assert "-0.025088" in report

    text = (tmp_path / "lem" / "manifest.txt").read_text()
    parsed = configparser.ConfigParser()
    parsed.read_string(text)
    assert parsed["manifest"]["status"] == "OK"
    assert parsed["config"]["scenario"] == "LEMMA_VERIFY"
    assert parsed["outputs"]["report"] == "lemma_report.txt"


def test_delta_tilt_scenario_writes_both_legs(tmp_path):
    out = tmp_path / "tilt"
    cfg = RunConfig(scenario="DELTA_TILT", n=32, t_final=2e-4, dt=1e-4,
                    snapshot_every=1e-4, out_dir=str(out))
    manifest = run_scenario(cfg)
    assert manifest.status == "OK"
    for name in ("initial", "final_forward", "final_backward",
                 "norms_forward", "norms_backward", "timeline_forward",
                 "timeline_backward"):
        assert name in manifest.outputs
        assert (out / manifest.outputs[name]).exists()
    assert manifest.trajectory is not None
    assert manifest.trajectory.final_time == pytest.approx(2e-4)


def test_backward_seed_scenario_small(tmp_path):
    out = tmp_path / "bwd"
    cfg = RunConfig(scenario="BACKWARD_SEED", n=32, t_final=-4e-4, dt=1e-4,
                    snapshot_every=2e-4, out_dir=str(out))
    manifest = run_scenario(cfg)
    assert manifest.status == "OK"
    assert manifest.trajectory.direction == -1
    for name in ("initial", "final", "norms", "timeline"):
        assert (out / manifest.outputs[name]).exists()
    final, t = import_snapshot(out / manifest.outputs["final"])
    assert t == pytest.approx(-4e-4, abs=1e-12)
    assert final.grid.n == 32


def test_forward_rerun_requires_input(tmp_path):
    out = tmp_path / "rerun"
    cfg = RunConfig(scenario="FORWARD_RERUN", out_dir=str(out))
    manifest = run_scenario(cfg)
    assert manifest.status == STATUS_ERROR
    assert "input_snapshot" in manifest.error
    # the manifest file lands even on failure
    assert "status = ERROR" in (out / "manifest.txt").read_text()


def test_forward_rerun_consumes_a_snapshot(tmp_path):
    grid = make_grid(64)
    curve = make_curve(grid, np.zeros(64), 0.05 * np.sin(grid.nodes))
    snap = tmp_path / "start.dat"
    export_snapshot(curve, snap, time=-1e-3)

    out = tmp_path / "rerun"
    cfg = RunConfig(scenario="FORWARD_RERUN", input_snapshot=str(snap),
                    t_final=1e-3, dt=2.5e-4, snapshot_every=5e-4,
                    out_dir=str(out))
    manifest = run_scenario(cfg)
    assert manifest.status == "OK"
    assert manifest.trajectory.times[0] == -1e-3
    assert manifest.trajectory.final_time == pytest.approx(1e-3)
    assert (out / manifest.outputs["final"]).exists()


def test_scenario_outputs_are_deterministic(tmp_path):
    finals = []
    for tag in ("one", "two"):
        out = tmp_path / tag
        cfg = RunConfig(scenario="DELTA_TILT", n=32, t_final=2e-4, dt=1e-4,
                        snapshot_every=1e-4, out_dir=str(out))
        manifest = run_scenario(cfg)
        finals.append((out / manifest.outputs["final_forward"]).read_bytes())
    assert finals[0] == finals[1]


def test_cli_run_and_inspect(tmp_path, capsys):
    out = tmp_path / "cli"
    code = main(["run", "--scenario", "DELTA_TILT", "--out", str(out),
                 "--n", "32", "--t-final", "2e-4", "--dt", "1e-4",
                 "--snapshot-every", "1e-4"])
    captured = capsys.readouterr()
    assert code == 0
    assert "status = OK" in captured.out
    assert "wrote manifest" in captured.out

    code = main(["inspect", str(out / "final_forward.dat")])
    captured = capsys.readouterr()
    assert code == 0
    assert "regime = " in captured.out


def test_cli_verify_lemma(tmp_path, capsys):
    target = tmp_path / "report.txt"
    assert main(["verify-lemma", "--out", str(target)]) == 0
    assert "min_admissible_R = 18" in capsys.readouterr().out
    assert target.exists()


def test_cli_usage_and_config_errors(tmp_path, capsys):
    assert main(["run", "--scenario", "NOPE"]) == 1
    capsys.readouterr()

    assert main(["run", "--config", str(tmp_path / "absent.ini")]) == 1
    assert "error:" in capsys.readouterr().err

    assert main(["run", "--scenario", "FORWARD_RERUN"]) == 1
    assert "needs --input" in capsys.readouterr().err


def test_cli_numerical_failure_exits_two(tmp_path, capsys):
    snap = tmp_path / "start.dat"
    grid = make_grid(32)
    export_snapshot(make_curve(grid, np.zeros(32), np.zeros(32)), snap,
                    time=0.0)
    code = main(["run", "--scenario", "FORWARD_RERUN", "--input", str(snap),
                 "--t-final", "-1.0", "--out", str(tmp_path / "fail")])
    captured = capsys.readouterr()
    assert code == 2
    assert "status = ERROR" in captured.out
