import csv
import json

import pytest
import yaml

from polidyn import ConfigError, load_config
from polidyn.cli import main
from polidyn.scenario import parse_config, read_trajectory_csv, run_scenario

ALL_CONFIGS = ["fig_ts", "fig_phase", "fig_bif", "fig_regimes",
               "fig_staircase", "fig_asym_traj", "fig_phi_delta",
               "table_germany"]


@pytest.mark.parametrize("name", ALL_CONFIGS)
def test_bundled_configs_parse(scenarios_dir, name):
    cfg = load_config(scenarios_dir / f"{name}.yaml")
    assert cfg.name == name


def test_unknown_key_rejected_with_path(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text(
        "name: bad\nkind: simulate\nmodel: baseline\n"
        "cases:\n  - name: x\n    params: {alpha: 0.1, gamma: 0.1, mu: 0.2, "
        "typo_key: 3}\n    initial: {L: 0.1, R: 0.1}\n"
    )
    with pytest.raises(ConfigError) as exc:
        load_config(path)
    assert "typo_key" in str(exc.value)
    assert "cases[0].params" in str(exc.value)


def test_negative_rate_names_the_key(tmp_path):
    path = tmp_path / "neg.yaml"
    path.write_text(
        "name: neg\nkind: simulate\nmodel: baseline\n"
        "cases:\n  - name: x\n    params: {alpha: 0.1, gamma: 0.1, mu: -0.2}\n"
        "    initial: {L: 0.1, R: 0.1}\n"
    )
    with pytest.raises(ConfigError) as exc:
        load_config(path)
    assert "mu" in str(exc.value)


def test_cli_exit_codes(tmp_path, scenarios_dir, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("name: x\nkind: nope\n")
    assert main(["simulate", "--config", str(bad),
                 "--out", str(tmp_path)]) == 2
    assert main(["simulate", "--config", str(tmp_path / "missing.yaml"),
                 "--out", str(tmp_path)]) == 2
    # Kind mismatch between command and config.
    assert main(["sweep", "--config", str(scenarios_dir / "fig_ts.yaml"),
                 "--out", str(tmp_path)]) == 2
    assert main(["germany", "--config", str(scenarios_dir / "table_germany.yaml"),
                 "--out", str(tmp_path / "g")]) == 0
    capsys.readouterr()


def test_deterministic_byte_identical_output(tmp_path, scenarios_dir):
    cfg = load_config(scenarios_dir / "fig_ts.yaml")
    run_scenario(cfg, tmp_path / "a")
    run_scenario(cfg, tmp_path / "b")
    for sub in (tmp_path / "a").iterdir():
        twin = tmp_path / "b" / sub.name
        assert sub.read_bytes() == twin.read_bytes()


def test_csv_round_trip_is_bit_identical(tmp_path, scenarios_dir):
    cfg = load_config(scenarios_dir / "fig_ts.yaml")
    summary = run_scenario(cfg, tmp_path)
    path = tmp_path / summary["files"][0]["path"]
    header, rows = read_trajectory_csv(path)
    assert header == ["t", "L", "R", "C"]
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        raw = list(reader)
    for parsed, text in zip(rows, raw):
        assert [f"{v:.17g}" for v in parsed] == text
    # LF endings and a trailing newline.
    blob = path.read_bytes()
    assert b"\r" not in blob
    assert blob.endswith(b"\n")


def test_manifest_row_counts_match_files(tmp_path, scenarios_dir):
    for name in ("fig_regimes", "fig_bif", "fig_phi_delta"):
        cfg = load_config(scenarios_dir / f"{name}.yaml")
        out = tmp_path / name
        summary = run_scenario(cfg, out)
        for entry in summary["files"]:
            with open(out / entry["path"], encoding="utf-8") as fh:
                n = sum(1 for _ in fh) - 1  # minus header
            assert n == entry["rows"]


def test_summary_json_written_and_loadable(tmp_path, scenarios_dir):
    cfg = load_config(scenarios_dir / "fig_asym_traj.yaml")
    summary = run_scenario(cfg, tmp_path)
    on_disk = json.loads((tmp_path / "fig_asym_traj_summary.json").read_text())
    assert on_disk == json.loads(json.dumps(summary))
    names = [c["name"] for c in on_disk["cases"]]
    assert names == ["subcritical", "supercritical"]


def test_single_point_sweep_yields_one_row_per_curve(tmp_path):
    doc = yaml.safe_load("""
name: single
kind: sweep
sweep:
  quantity: phi
  param: delta_shock
  start: 0.5
  stop: 0.5
  step: 0.1
  curves:
    - name: only
      params: {alpha: 0.18, gamma: 0.08, mu: 0.30, delta: 0.70, rho: 0.10}
""")
    cfg = parse_config(doc, "inline")
    summary = run_scenario(cfg, tmp_path)
    assert summary["files"][0]["rows"] == 1


def test_bifurcation_sweep_contains_threshold_points(tmp_path, scenarios_dir):
    cfg = load_config(scenarios_dir / "fig_bif.yaml")
    summary = run_scenario(cfg, tmp_path)
    stars = {c["name"]: c["gamma_star"] for c in summary["curves"]}
    assert stars == {"alpha=0.05": pytest.approx(0.15),
                     "alpha=0.10": pytest.approx(0.10),
                     "alpha=0.15": pytest.approx(0.05)}
    # P* is zero at and below gamma*, positive above.
    by_curve = {}
    with open(tmp_path / "fig_bif.csv", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            by_curve.setdefault(row["curve"], []).append(
                (float(row["gamma"]), float(row["P_star"])))
    for curve, pts in by_curve.items():
        gstar = stars[curve]
        assert any(abs(g - gstar) < 1e-12 for g, _ in pts)
        for g, p in pts:
            if g <= gstar + 1e-12:
                assert p == 0.0
            else:
                assert p > 0.0


def test_verify_cli_deterministic_and_green(capsys):
    assert main(["verify", "--seed", "7"]) == 0
    first = capsys.readouterr().out
    assert main(["verify", "--seed", "7"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "checks passed" in first


def test_thresholds_cli(tmp_path, capsys):
    path = tmp_path / "params.yaml"
    path.write_text(
        "model: 4group\n"
        "params: {alpha: 0.15, gamma: 0.15, mu: 0.40, delta: 0.70, rho: 0.10}\n"
        "delta_shock: 0.55\n"
    )
    assert main(["thresholds", "--config", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["r_rad"] == pytest.approx(0.75)
    assert out["delta_c"] == pytest.approx(0.25)
    assert out["t_star"] == pytest.approx(10 * __import__("math").log(2.2))
