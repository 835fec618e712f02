"""
Command-line runs end to end: exit codes and JSON reports
"""

import json

import numpy as np
import pytest

from holonomy2 import fixtures
from holonomy2.cli import run
from holonomy2.history import db
from holonomy2.main import save_surface_binary


def invoke(capsys, *argv):
    code = run([str(arg) for arg in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == 0
    assert "holonomy2" in capsys.readouterr().out


def test_missing_command_is_usage_error(capsys):
    assert run([]) == 2
    capsys.readouterr()


def test_peiffer_failure_exit_code(capsys, data_dir):
    code, report = invoke(capsys, "crossed", "validate", data_dir / "bad.json")
    assert code == 1
    assert report["status"] == "fail"
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    assert failed == ["crossed/peiffer"]
    assert {row["label"] for row in report["result"]["violations"]} == {"b"}


def test_valid_crossed_module(capsys, data_dir):
    code, report = invoke(capsys, "crossed", "validate", data_dir / "sl2_identity.json")
    assert code == 0
    assert report["schema"] == "holonomy2/report-v1"
    assert report["result"]["violations"] == []


def test_malformed_json_exit_code(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"h": ')
    code, report = invoke(capsys, "crossed", "validate", broken)
    assert code == 3
    assert report["error"]["kind"] == "SchemaError"


def test_reports_are_byte_identical(capsys, data_dir):
    argv = ["forms", "check-mc", str(data_dir / "mc_pair_gl1.json")]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_non_mc_pair(capsys, data_dir):
    code, report = invoke(capsys, "forms", "check-mc", data_dir / "mc_pair_non_mc.json")
    assert code == 1
    assert report["result"]["maurer_cartan"] is False


def test_skeletal_splice_and_compare(capsys, data_dir):
    code, report = invoke(capsys, "crossed", "skeletal", data_dir / "heisenberg_plane.json")
    assert code == 0
    assert report["result"]["kernel_dim"] == 1
    code, report = invoke(capsys, "crossed", "splice", data_dir / "ses_abelian.json")
    assert code == 0
    assert report["result"]["class_is_zero"] is False
    identity = data_dir / "sl2_identity.json"
    code, _ = invoke(capsys, "crossed", "compare", identity, identity)
    assert code == 0


def test_holonomy_of_gl1_pair(capsys, data_dir):
    expected = 1.5 * np.expm1(0.5) / 0.5
    code, report = invoke(
        capsys, "--derivative", "spectral", "holonomy",
        "--pair", data_dir / "mc_pair_gl1.json", "--grid", "32x32",
        "--expect", str(float(expected)),
    )
    assert code == 0
    assert report["result"]["holonomy"][0] == pytest.approx(expected, rel=1e-4)


def test_holonomy_grid_must_match_surface(capsys, data_dir, tmp_path):
    surface = tmp_path / "patch.bin"
    save_surface_binary(surface, fixtures.torus_patch(8, 8))
    code, report = invoke(
        capsys, "holonomy", "--pair", data_dir / "mc_pair_gl1.json", "--surface", surface,
        "--grid", "16x16", "--winding-sigma", "1,0", "--winding-tau", "0,1",
    )
    assert code == 3
    assert "does not match" in report["error"]["message"]


def test_hochschild_cycle(capsys, data_dir):
    dga = data_dir / "dga_truncated4.json"
    code, report = invoke(capsys, "hochschild", "check-cycle", "--dga", dga, "--element", "x")
    assert code == 0
    assert report["result"] == {"cycle": True, "maurer_cartan": True}
    code, report = invoke(
        capsys, "hochschild", "check-cycle", "--dga", dga, "--element", "x:2", "--trunc", "3"
    )
    assert code == 1
    assert report["result"] == {"cycle": False, "maurer_cartan": False}


def test_higher_hochschild_commands(capsys, data_dir):
    dga = data_dir / "dga_xy.json"
    code, _ = invoke(
        capsys, "hh", "d2-check", "--dga", dga, "--model", "torus", "--cutoff", 3, "--chains", 10
    )
    assert code == 0
    code, _ = invoke(capsys, "hh", "compare-circle", "--dga", dga, "--chains", 10)
    assert code == 0
    circle = data_dir / "circle2.json"
    code, report = invoke(capsys, "hh", "euler", "--dga", dga, "--simpset", circle)
    assert code == 0
    assert report["result"]["dimensions"]["0"] == {"0": 1, "1": 1, "2": 1, "3": 1}


def test_selected_suites_with_timings(capsys):
    code, report = invoke(capsys, "--timings", "selftest", "--suite", "lie", "--suite", "splice")
    assert code == 0
    assert "lie_suite" in report["timings"]
    assert all(c["name"].startswith(("lie/", "splice/")) for c in report["checks"])


def test_recorded_runs(capsys, data_dir, tmp_path):
    store = tmp_path / "history.sqlite"
    code, _ = invoke(capsys, "--record", store, "crossed", "validate", data_dir / "bad.json")
    assert code == 1
    code, report = invoke(capsys, "--record", store, "history", "list")
    assert code == 0
    (row,) = report["result"]["runs"]
    assert row["exit_code"] == 1
    code, report = invoke(capsys, "--record", store, "history", "show", row["run_id"])
    assert code == 0
    assert report["result"]["report"]["status"] == "fail"
    code, _ = invoke(capsys, "--record", store, "history", "delete", row["run_id"])
    assert code == 0
    db.close()


def test_history_needs_a_database(capsys):
    code, report = invoke(capsys, "history", "list")
    assert code == 3
    assert "--record" in report["error"]["message"]


def test_unknown_log_level_is_usage_error(capsys):
    assert run(["--log-level", "LOUD", "selftest"]) == 2
    assert "invalid choice" in capsys.readouterr().err


def test_log_level_is_case_insensitive(capsys):
    code, report = invoke(capsys, "--log-level", "debug", "selftest", "--suite", "lie")
    assert code == 0
    assert report["status"] == "pass"


def test_unwritable_log_file_is_reported(capsys, tmp_path):
    code, report = invoke(capsys, "--log-file", tmp_path, "selftest", "--suite", "lie")
    assert code == 1
    assert report["error"]["kind"] == "IsADirectoryError"
