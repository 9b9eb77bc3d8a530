import json
import pathlib

import pytest

pytest.importorskip("plotkit.figures")

import matplotlib.pyplot as plt

from plotkit import EmptyInput, FigureSpec, MissingColumn, render, specs_from_summary
from plotkit.cli import main as cli_main
from plotkit.figures import Panel, PlotkitError, read_table

SUMMARY_FOR_CLASS = {
    "timeseries": "fig_ts_summary.json",
    "phase": "fig_phase_summary.json",
    "bifurcation": "fig_bif_summary.json",
    "regimes": "fig_regimes_summary.json",
    "staircase": "fig_staircase_summary.json",
    "phi-curve": "fig_phi_delta_summary.json",
    "table": "table_germany_summary.json",
}


def _render_class(scenario_outputs, tmp_path, figure_class):
    specs = specs_from_summary(
        scenario_outputs / SUMMARY_FOR_CLASS[figure_class], outdir=tmp_path)
    figs = []
    for spec in specs:
        assert spec.figure_class == figure_class
        fig = render(spec)
        assert pathlib.Path(spec.output).exists()
        figs.append(fig)
    return specs, figs


def _horizontal_lines(ax):
    out = []
    for line in ax.get_lines():
        y = line.get_ydata()
        if len(y) == 2 and y[0] == y[1]:
            out.append(float(y[0]))
    return out


def _vertical_lines(ax):
    out = []
    for line in ax.get_lines():
        x = line.get_xdata()
        y = line.get_ydata()
        if len(x) == 2 and x[0] == x[1] and y[0] != y[1]:
            out.append(float(x[0]))
    return out


@pytest.mark.parametrize("figure_class", sorted(SUMMARY_FOR_CLASS))
def test_every_figure_class_renders(scenario_outputs, tmp_path, figure_class):
    _, figs = _render_class(scenario_outputs, tmp_path, figure_class)
    for fig in figs:
        plt.close(fig)


def test_timeseries_reference_lines_match_summary(scenario_outputs, tmp_path):
    summary = json.loads(
        (scenario_outputs / "fig_ts_summary.json").read_text())
    specs, figs = _render_class(scenario_outputs, tmp_path, "timeseries")
    fig = figs[0]
    by_name = {c["name"]: c["references"] for c in summary["cases"]}
    for ax, panel in zip(fig.axes, specs[0].panels):
        refs = by_name[ax.get_title()]
        drawn = _horizontal_lines(ax)
        for key in ("P_star", "C_star"):
            if isinstance(refs.get(key), (int, float)):
                assert refs[key] in drawn
        eq = refs.get("equilibrium")
        if isinstance(eq, dict):
            for v in eq.values():
                assert v in drawn
    plt.close(fig)


def test_regime_floor_lines_match_summary(scenario_outputs, tmp_path):
    summary = json.loads(
        (scenario_outputs / "fig_regimes_summary.json").read_text())
    specs, figs = _render_class(scenario_outputs, tmp_path, "regimes")
    fig = figs[0]
    by_name = {c["name"]: c for c in summary["cases"]}
    for ax in fig.axes:
        entry = by_name[ax.get_title()]
        drawn = _horizontal_lines(ax)
        for rec in entry["shocks"]["records"]:
            assert rec["floor"] in drawn
    plt.close(fig)


def test_bifurcation_verticals_match_gamma_star(scenario_outputs, tmp_path):
    summary = json.loads(
        (scenario_outputs / "fig_bif_summary.json").read_text())
    _, figs = _render_class(scenario_outputs, tmp_path, "bifurcation")
    fig = figs[0]
    stars = [c["gamma_star"] for c in summary["curves"]]
    for ax in fig.axes:
        drawn = _vertical_lines(ax)
        for g in stars:
            assert g in drawn
    plt.close(fig)


def test_phi_curve_verticals_match_delta_c(scenario_outputs, tmp_path):
    summary = json.loads(
        (scenario_outputs / "fig_phi_delta_summary.json").read_text())
    _, figs = _render_class(scenario_outputs, tmp_path, "phi-curve")
    ax = figs[0].axes[0]
    drawn = _vertical_lines(ax)
    for c in summary["curves"]:
        dc = c["delta_c"]
        dc = dc[0] if isinstance(dc, list) else dc
        assert dc in drawn
    # The growth threshold itself is always marked.
    assert 1.0 in _horizontal_lines(ax)
    plt.close(figs[0])


def test_phase_equilibrium_marker_matches_summary(scenario_outputs, tmp_path):
    summary = json.loads(
        (scenario_outputs / "fig_phase_summary.json").read_text())
    _, figs = _render_class(scenario_outputs, tmp_path, "phase")
    fig = figs[0]
    by_name = {c["name"]: c["references"] for c in summary["cases"]}
    for ax in fig.axes:
        eq = by_name[ax.get_title()]["equilibrium"]
        stars = [ln for ln in ax.get_lines() if ln.get_marker() == "*"]
        assert len(stars) == 1
        x, y = stars[0].get_xdata()[0], stars[0].get_ydata()[0]
        if isinstance(eq, dict):
            assert (x, y) == (eq["L"], eq["R"])
        else:
            assert eq == "CentristOnly" and (x, y) == (0.0, 0.0)
    plt.close(fig)


def test_staircase_draws_shock_markers(scenario_outputs, tmp_path):
    summary = json.loads(
        (scenario_outputs / "fig_staircase_summary.json").read_text())
    _, figs = _render_class(scenario_outputs, tmp_path, "staircase")
    ax = figs[0].axes[0]
    records = summary["cases"][0]["shocks"]["records"]
    verticals = _vertical_lines(ax)
    horizontals = _horizontal_lines(ax)
    for rec in records:
        assert rec["time"] in verticals
        assert rec["floor"] in horizontals
    plt.close(figs[0])


def test_empty_csv_is_rejected(tmp_path):
    no_rows = tmp_path / "no_rows.csv"
    no_rows.write_text("t,L,R,C\n")
    with pytest.raises(EmptyInput):
        read_table(no_rows, ("t", "L", "R", "C"))
    truly_empty = tmp_path / "empty.csv"
    truly_empty.write_text("")
    with pytest.raises(EmptyInput):
        read_table(truly_empty, ("t",))


def test_missing_column_is_named(tmp_path):
    path = tmp_path / "partial.csv"
    path.write_text("t,L,R\n0,0.1,0.2\n")
    spec = FigureSpec(
        figure_class="timeseries", output=str(tmp_path / "x.png"),
        panels=(Panel(title="", inputs=(str(path),)),))
    with pytest.raises(MissingColumn) as exc:
        render(spec)
    assert exc.value.column == "C"
    assert "'C'" in str(exc.value)


def test_spec_validation():
    with pytest.raises(PlotkitError):
        FigureSpec(figure_class="pie", output="x.png",
                   panels=(Panel(title="", inputs=("a.csv",)),))
    with pytest.raises(PlotkitError):
        FigureSpec(figure_class="timeseries", output="x.png", panels=())


def test_spec_json_round_trip(tmp_path):
    doc = {
        "figure_class": "timeseries",
        "output": str(tmp_path / "out.png"),
        "panels": [{"title": "a", "inputs": ["a.csv"],
                    "references": {"C_star": 0.5}}],
    }
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(doc))
    spec = FigureSpec.from_json(path)
    assert spec.panels[0].references == {"C_star": 0.5}
    assert spec.panels[0].inputs == ("a.csv",)


def test_cli_renders_directory(scenario_outputs, tmp_path):
    rc = cli_main(["render", "--all", str(scenario_outputs),
                   "--out", str(tmp_path)])
    assert rc == 0
    pngs = sorted(p.name for p in tmp_path.glob("*.png"))
    assert len(pngs) == len(SUMMARY_FOR_CLASS) + 1  # two timeseries scenarios
    assert "fig_ts.png" in pngs and "table_germany.png" in pngs


def test_cli_missing_directory(tmp_path):
    rc = cli_main(["render", "--all", str(tmp_path / "nope")])
    assert rc == 2


def test_plotkit_never_imports_the_simulation_package():
    import plotkit
    pkg_dir = pathlib.Path(plotkit.__file__).parent
    for src in pkg_dir.glob("*.py"):
        text = src.read_text()
        assert "import polidyn" not in text
        assert "from polidyn" not in text


def test_summary_without_figure_class_is_rejected(tmp_path):
    path = tmp_path / "x_summary.json"
    path.write_text(json.dumps({"name": "x", "kind": "simulate",
                                "figure": None, "cases": [], "files": []}))
    with pytest.raises(PlotkitError):
        specs_from_summary(path)
