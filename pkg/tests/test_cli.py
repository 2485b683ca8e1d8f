from __future__ import annotations

import json

import pytest

from emforms.cli import Options, build_parser, cmd_lorentz, cmd_verify, main
from emforms.scenarios import build, load


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def assert_report_shape(rep):
    for key in ("schema_version", "command", "scenario", "parameters", "tables", "assertions", "passed", "wall_time"):
        assert key in rep
    assert rep["assertions"]
    for row in rep["assertions"]:
        assert {"name", "measured", "tolerance", "passed", "mode"} <= set(row)
    assert rep["passed"] == all(r["passed"] for r in rep["assertions"])


def test_verify_plane_wave_passes(capsys):
    code, rep = run_json(capsys, ["verify", "--scenario", "plane_wave"])
    assert code == 0
    assert_report_shape(rep)
    orders = [r["order"] for r in rep["tables"]["convergence"]]
    assert all(abs(o - 2) < 0.2 for o in orders)
    assert len(rep["tables"]["probes"]) == rep["parameters"]["probes"]


def test_corrupted_source_flips_exit_code(capsys):
    code, rep = run_json(capsys, ["verify", "--scenario", "plane_wave_bad_source"])
    assert code == 1
    failed = [r["name"] for r in rep["assertions"] if not r["passed"]]
    assert any("second group" in n for n in failed)
    assert not any("first group" in n for n in failed)


def test_uniform_static_residuals_vanish():
    rep = cmd_verify(build(load("uniform_static")))
    rows = rep.tables["convergence"]
    assert all(r["coarse"] < 1e-14 for r in rows)
    assert rep.passed


@pytest.mark.parametrize(
    "argv",
    [
        ["particle", "--scenario", "gyro"],
        ["particle", "--scenario", "dyon"],
        ["particle", "--scenario", "free_particle"],
        ["rays", "--scenario", "snell"],
        ["rays", "--scenario", "grin"],
        ["monopole", "--scenario", "monopole_unit_flux"],
        ["monopole", "--scenario", "monopole"],
        ["monopole", "--scenario", "coulomb"],
        ["lorentz", "--scenario", "lorentz", "--trials", "200"],
        ["characteristic", "--scenario", "plane_wave"],
        ["wave", "--scenario", "photon_grid", "--steps", "100"],
    ],
)
def test_commands_pass(capsys, argv):
    code, rep = run_json(capsys, argv)
    assert_report_shape(rep)
    assert code == 0, [a for a in rep["assertions"] if not a["passed"]]


def test_out_writes_report_and_data_files(tmp_path, capsys):
    out = tmp_path / "gyro.json"
    assert main(["particle", "--scenario", "gyro", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    csv_file = tmp_path / "gyro_particle0.csv"
    assert str(csv_file) in rep["files"]
    assert csv_file.read_text().splitlines()[0] == "u,t,q0,q1,q2,q3,p0,p1,p2,p3,H"
    assert capsys.readouterr().out == ""


def test_out_creates_missing_directory(tmp_path):
    out = tmp_path / "run" / "nested" / "m.json"
    assert main(["monopole", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True


def test_wave_writes_grid_and_monitors(tmp_path):
    out = tmp_path / "w.json"
    assert main(["wave", "--steps", "10", "--out", str(out)]) == 0
    from emforms.gridio import read_grid_state

    s = read_grid_state(tmp_path / "w_final.emfgrid")
    assert s.grid.shape == (256,)
    assert (tmp_path / "w_monitors.csv").exists()


def test_csv_format(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--format", "csv", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert isinstance(rep["tables"]["probes"], str)
    assert (tmp_path / "v_convergence.csv").read_text().startswith("residual,h,coarse,fine,order")


def test_csv_format_needs_out():
    with pytest.raises(SystemExit):
        main(["verify", "--format", "csv"])


def test_unknown_flag_is_an_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--bogus", "1"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        build_parser().parse_args(["nosuchcommand"])


def test_missing_scenario_is_error(capsys):
    assert main(["verify", "--scenario", "does_not_exist"]) == 2
    assert "does_not_exist" in capsys.readouterr().err


def test_flags_override_settings(capsys):
    code, rep = run_json(capsys, ["verify", "--h", "0.004", "--tol", "1e-3", "--seed", "3"])
    assert rep["parameters"]["h"] == 0.004
    assert rep["parameters"]["tol"] == 1e-3
    assert code == 0


def test_tight_tolerance_fails(capsys):
    code, _ = run_json(capsys, ["verify", "--tol", "1e-12"])
    assert code == 1


def test_reports_deterministic():
    sc = build(load("lorentz"))
    a = cmd_lorentz(sc, Options(trials=50)).as_dict()
    b = cmd_lorentz(build(load("lorentz")), Options(trials=50)).as_dict()
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b
