"""Registry and CLI behavior: deterministic artifacts, config merging,
exit codes."""

import json
import math
import os

import pytest

from casidec.cli import main
from casidec.errors import UnknownScenario
from casidec.scenarios import (
    describe,
    list_scenarios,
    run_scenario,
    scenario_defaults,
)

EXPECTED_NAMES = [
    "1d-mirror-vacuum",
    "sphere-rayleigh-vacuum",
    "sphere-thermal-free",
    "cosmic-background-sphere",
    "sieve-pointer-states",
    "wigner-cat-highT",
    "wigner-gaussian-oracle",
    "identity-suite",
]

# cosmic-background anchor: micron coherence in the 2.7 K photon bath
TD_COSMIC = 2.6552247664074382e-09


def _write_config(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


# ------------------------------------------------------------- registry


def test_registry_lists_every_scenario_in_order():
    assert [name for name, _ in list_scenarios()] == EXPECTED_NAMES


def test_describe_carries_summary_and_defaults():
    text = describe("cosmic-background-sphere")
    assert text.startswith("cosmic-background-sphere\n")
    assert "2.7 K" in text
    assert '"delta_x"' in text and '"series_points": 25' in text


def test_describe_unknown_scenario():
    with pytest.raises(UnknownScenario):
        describe("warp-drive")


def test_scenario_defaults_are_copies():
    first = scenario_defaults("cosmic-background-sphere")
    first["mirror"]["radius"] = 123.0
    assert scenario_defaults("cosmic-background-sphere")["mirror"]["radius"] == 1e-2


def test_cosmic_background_run(tmp_path):
    rep = run_scenario("cosmic-background-sphere", {"series_points": 5},
                       out_base=str(tmp_path))
    routes = rep.summary["derived"]["td_routes_s"]
    assert routes["combined"] == pytest.approx(TD_COSMIC, rel=1e-12)
    assert routes["thermal_length"] == pytest.approx(TD_COSMIC, rel=1e-12)
    assert routes["diffusion"] == pytest.approx(TD_COSMIC, rel=1e-12)
    assert rep.summary["derived"]["td_times_dx2_s_m2"] == pytest.approx(
        2.655224766407438e-21, rel=1e-12)

    assert rep.artifacts == ("summary.json", "series.csv")
    on_disk = json.loads((rep.out_dir / "summary.json").read_text())
    assert on_disk["derived"]["td_routes_s"]["combined"] == routes["combined"]

    lines = (rep.out_dir / "series.csv").read_text().splitlines()
    assert lines[0] == "t_seconds,visibility,purity,mean_x,mean_p,cov_xx,cov_xp,cov_pp"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[1]) == 1.0  # overlap starts at unity
    assert float(first[2]) == 1.0


def test_reruns_are_byte_identical(tmp_path):
    rep_a = run_scenario("cosmic-background-sphere", {"series_points": 5},
                         out_base=str(tmp_path / "a"))
    rep_b = run_scenario("cosmic-background-sphere", {"series_points": 5},
                         out_base=str(tmp_path / "b"))
    for name in ("summary.json", "series.csv"):
        assert (rep_a.out_dir / name).read_bytes() == (rep_b.out_dir / name).read_bytes()


def test_manifest_is_the_only_place_with_timing(tmp_path):
    rep = run_scenario("cosmic-background-sphere", {"series_points": 5},
                       out_base=str(tmp_path))
    manifest = json.loads((rep.out_dir / "manifest.json").read_text())
    assert manifest["schema_version"] == 1
    assert manifest["scenario"] == "cosmic-background-sphere"
    assert manifest["config"]["series_points"] == 5
    assert manifest["config"]["mirror"]["temperature"] == 2.7
    assert manifest["artifacts"] == ["summary.json", "series.csv"]
    assert manifest["wall_clock_seconds"] >= 0.0
    assert "started_utc" in manifest
    for name in ("summary.json", "series.csv"):
        assert "wall_clock" not in (rep.out_dir / name).read_text()


def test_sieve_series_leaves_visibility_blank(tmp_path):
    rep = run_scenario("sieve-pointer-states", {"series_points": 5},
                       out_base=str(tmp_path))
    lines = (rep.out_dir / "series.csv").read_text().splitlines()
    assert len(lines) == 6
    cells = lines[1].split(",")
    assert cells[1] == ""            # no fringes in a Gaussian series
    assert float(cells[2]) == pytest.approx(1.0, abs=1e-12)
    assert rep.summary["derived"]["r_star"] <= 1e-3
    assert rep.summary["derived"]["stable"] is True


def test_unknown_scenario_raises():
    with pytest.raises(UnknownScenario):
        run_scenario("warp-drive", {})


# ------------------------------------------------------------------ CLI


def test_cli_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    for name in EXPECTED_NAMES:
        assert name in out


def test_cli_describe(capsys):
    assert main(["describe", "identity-suite"]) == 0
    assert "identity-suite" in capsys.readouterr().out


def test_cli_run_success(tmp_path, capsys):
    cfg = _write_config(tmp_path / "cfg.json", {
        "scenario": "cosmic-background-sphere", "series_points": 5})
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 0
    out = capsys.readouterr().out
    assert "scenario: cosmic-background-sphere" in out
    assert "wrote" in out
    assert (tmp_path / "out" / "cosmic-background-sphere" / "manifest.json").exists()


def test_cli_out_dir_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CASIDEC_OUT_DIR", str(tmp_path / "env_out"))
    cfg = _write_config(tmp_path / "cfg.json", {
        "scenario": "cosmic-background-sphere", "series_points": 5})
    assert main(["run", cfg]) == 0
    capsys.readouterr()
    assert (tmp_path / "env_out" / "cosmic-background-sphere" / "summary.json").exists()


def test_cli_out_flag_beats_env_var(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CASIDEC_OUT_DIR", str(tmp_path / "env_out"))
    cfg = _write_config(tmp_path / "cfg.json", {
        "scenario": "cosmic-background-sphere", "series_points": 5})
    assert main(["run", cfg, "--out", str(tmp_path / "flag_out")]) == 0
    capsys.readouterr()
    assert (tmp_path / "flag_out" / "cosmic-background-sphere").is_dir()
    assert not (tmp_path / "env_out").exists()


@pytest.mark.parametrize("payload", [
    {"series_points": 5},                                   # no scenario key
    {"scenario": "warp-drive"},                             # unknown scenario
    {"scenario": "cosmic-background-sphere", "bogus": 1},   # unknown key
    {"scenario": "cosmic-background-sphere", "mirror": {"bogus": 1}},
    {"scenario": "cosmic-background-sphere", "series_points": "many"},
    {"scenario": "cosmic-background-sphere", "mirror": {"mass": -1.0}},
])
def test_cli_config_errors_exit_2(tmp_path, capsys, payload):
    cfg = _write_config(tmp_path / "cfg.json", payload)
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_missing_and_malformed_files_exit_2(tmp_path, capsys):
    assert main(["run", str(tmp_path / "absent.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["run", str(bad)]) == 2
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    assert main(["run", str(arr)]) == 2
    capsys.readouterr()


def test_cli_regime_violation_exits_3(tmp_path, capsys):
    # a meter-scale sphere is far outside the long-wavelength window
    cfg = _write_config(tmp_path / "cfg.json", {
        "scenario": "sphere-rayleigh-vacuum", "mirror": {"radius": 1.0}})
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 3
    assert "error:" in capsys.readouterr().err


def test_cli_failed_consistency_exits_4(tmp_path, capsys):
    cfg = _write_config(tmp_path / "cfg.json", {
        "scenario": "identity-suite", "draws": 50, "tolerance": 1e-30})
    assert main(["run", cfg, "--out", str(tmp_path / "out")]) == 4
    assert "FAIL" in capsys.readouterr().err


def test_cli_io_failure_exits_1(tmp_path, capsys):
    blocker = tmp_path / "blocked"
    blocker.write_text("not a directory")
    cfg = _write_config(tmp_path / "cfg.json", {
        "scenario": "cosmic-background-sphere", "series_points": 5})
    assert main(["run", cfg, "--out", str(blocker / "sub")]) == 1
    capsys.readouterr()


def test_cli_check_runs_the_identity_suite(tmp_path, capsys):
    assert main(["check", "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "all identities hold" in out
    assert "max deviation" in out
