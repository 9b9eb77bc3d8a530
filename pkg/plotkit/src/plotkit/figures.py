"""Figure rendering.  Inputs are CSV files plus reference values taken
verbatim from a scenario summary JSON; nothing is recomputed here."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

FIGURE_CLASSES = ("timeseries", "phase", "bifurcation", "regimes",
                  "staircase", "phi-curve", "table")

#: Expected columns of the first input CSV, per figure class.
REQUIRED_COLUMNS = {
    "timeseries": ("t", "L", "R", "C"),
    "phase": ("t", "L", "R", "C"),
    "bifurcation": ("curve", "gamma", "P_star", "C_star"),
    "regimes": ("t", "L", "R", "C", "A"),
    "staircase": ("t", "L", "R", "C", "A"),
    "phi-curve": ("curve", "delta", "phi"),
    "table": ("year", "V", "C", "A"),
}


class PlotkitError(Exception):
    pass


class MissingColumn(PlotkitError):
    def __init__(self, path, column):
        self.column = column
        super().__init__(f"{path}: missing required column {column!r}")


class EmptyInput(PlotkitError):
    pass


@dataclass(frozen=True)
class Panel:
    """One axes: a set of input CSVs sharing reference values."""

    title: str
    inputs: tuple[str, ...]
    references: dict = field(default_factory=dict)


@dataclass(frozen=True)
class FigureSpec:
    figure_class: str
    output: str
    panels: tuple[Panel, ...]

    def __post_init__(self):
        if self.figure_class not in FIGURE_CLASSES:
            raise PlotkitError(f"unknown figure class {self.figure_class!r}")
        if not self.panels:
            raise PlotkitError("a figure needs at least one panel")

    @classmethod
    def from_json(cls, path: str | Path) -> "FigureSpec":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        panels = tuple(
            Panel(title=p.get("title", ""), inputs=tuple(p["inputs"]),
                  references=p.get("references", {}))
            for p in doc["panels"]
        )
        return cls(figure_class=doc["figure_class"], output=doc["output"],
                   panels=panels)


def read_table(path: str | Path, required: tuple[str, ...]) -> dict[str, list]:
    """Read a CSV into columns, validating presence of required headers
    and rejecting empty files."""
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: no header row") from None
        for col in required:
            if col not in header:
                raise MissingColumn(path, col)
        rows = list(reader)
    if not rows:
        raise EmptyInput(f"{path}: no data rows")
    cols: dict[str, list] = {h: [] for h in header}
    for row in rows:
        for h, v in zip(header, row):
            try:
                cols[h].append(float(v))
            except ValueError:
                cols[h].append(v)
    return cols


def _ref_lines(ax, refs: dict) -> None:
    """Dashed horizontal lines at the analytic values carried in refs."""
    for key in ("P_star", "C_star"):
        if isinstance(refs.get(key), (int, float)):
            ax.axhline(refs[key], linestyle="--", linewidth=0.9,
                       color="0.35", label=key)
    eq = refs.get("equilibrium")
    if isinstance(eq, dict):
        for key, color in (("L", "tab:blue"), ("R", "tab:red"),
                           ("C", "tab:green")):
            ax.axhline(eq[key], linestyle=":", linewidth=0.9, color=color)
    for f in refs.get("floors", []):
        ax.axhline(f, linestyle="--", linewidth=0.9, color="0.5")


def _draw_timeseries(ax, panel: Panel) -> None:
    cols = read_table(panel.inputs[0], REQUIRED_COLUMNS["timeseries"])
    ax.plot(cols["t"], cols["L"], label="L", color="tab:blue")
    ax.plot(cols["t"], cols["R"], label="R", color="tab:red")
    ax.plot(cols["t"], cols["C"], label="C", color="tab:green")
    if "A" in cols:
        ax.plot(cols["t"], cols["A"], label="A", color="tab:purple",
                linestyle="--")
    _ref_lines(ax, panel.references)
    ax.set_xlabel("t")
    ax.set_ylabel("share")
    ax.set_ylim(-0.02, 1.02)


def _draw_phase(ax, panel: Panel) -> None:
    for path in panel.inputs:
        cols = read_table(path, REQUIRED_COLUMNS["phase"])
        ax.plot(cols["L"], cols["R"], linewidth=0.9)
        ax.plot(cols["L"][0], cols["R"][0], marker=".", color="0.4")
    eq = panel.references.get("equilibrium")
    if isinstance(eq, dict):
        ax.plot(eq["L"], eq["R"], marker="*", markersize=14,
                color="black", zorder=5)
    elif eq == "CentristOnly":
        ax.plot(0.0, 0.0, marker="*", markersize=14, color="black", zorder=5)
    ax.set_xlabel("L")
    ax.set_ylabel("R")
    ax.set_xlim(-0.02, 1.02)
    ax.set_ylim(-0.02, 1.02)


def _split_curves(cols: dict[str, list], ykey: str, xkey: str):
    series: dict[str, tuple[list, list]] = {}
    for name, x, y in zip(cols["curve"], cols[xkey], cols[ykey]):
        series.setdefault(name, ([], []))
        series[name][0].append(x)
        series[name][1].append(y)
    return series


def _draw_bifurcation(axes, panel: Panel) -> None:
    cols = read_table(panel.inputs[0], REQUIRED_COLUMNS["bifurcation"])
    stars = {c["name"]: c.get("gamma_star")
             for c in panel.references.get("curves", [])}
    for ax, ykey, label in ((axes[0], "P_star", "P*"),
                            (axes[1], "C_star", "C*")):
        for name, (x, y) in _split_curves(cols, ykey, "gamma").items():
            ax.plot(x, y, label=name)
            if isinstance(stars.get(name), (int, float)):
                ax.axvline(stars[name], linestyle="--", linewidth=0.8,
                           color="0.6")
        ax.set_xlabel("gamma")
        ax.set_ylabel(label)
        ax.legend(fontsize=8)


def _draw_phi(ax, panel: Panel) -> None:
    cols = read_table(panel.inputs[0], REQUIRED_COLUMNS["phi-curve"])
    thresholds = {c["name"]: c.get("delta_c")
                  for c in panel.references.get("curves", [])}
    for name, (x, y) in _split_curves(cols, "phi", "delta").items():
        ax.plot(x, y, label=name)
        dc = thresholds.get(name)
        if isinstance(dc, (int, float)):
            ax.axvline(dc, linestyle=":", linewidth=1.0, color="0.3")
    ax.axhline(1.0, linewidth=0.8, color="black")
    lo, hi = ax.get_ylim()
    if hi > 1.0:
        ax.axhspan(1.0, hi, color="tab:orange", alpha=0.12)
        ax.set_ylim(lo, hi)
    ax.set_xlabel("delta")
    ax.set_ylabel("phi")
    ax.legend(fontsize=8)


def _draw_staircase(ax, panel: Panel) -> None:
    cols = read_table(panel.inputs[0], REQUIRED_COLUMNS["staircase"])
    ax.plot(cols["t"], cols["C"], label="C", color="tab:green")
    ax.plot(cols["t"], [l + r for l, r in zip(cols["L"], cols["R"])],
            label="L+R", color="tab:red")
    ax.plot(cols["t"], cols["A"], label="A", color="tab:purple",
            linestyle="--")
    if len(panel.inputs) > 1:
        shocks = read_table(panel.inputs[1],
                            ("k", "t_k", "B_k", "floor"))
        for t_k, floor in zip(shocks["t_k"], shocks["floor"]):
            ax.axvline(t_k, linewidth=0.6, color="0.8")
            ax.axhline(floor, linestyle="--", linewidth=0.8, color="0.5")
    _ref_lines(ax, panel.references)
    ax.set_xlabel("t")
    ax.set_ylabel("share")
    ax.set_ylim(-0.02, 1.02)


def _draw_table(ax, panel: Panel) -> None:
    cols = read_table(panel.inputs[0], REQUIRED_COLUMNS["table"])
    headers = list(cols.keys())
    n = len(cols[headers[0]])
    cell_text = [
        [f"{cols[h][i]:.3f}" if isinstance(cols[h][i], float) else
         str(cols[h][i]) for h in headers]
        for i in range(n)
    ]
    ax.axis("off")
    table = ax.table(cellText=cell_text, colLabels=headers, loc="center")
    table.scale(1.0, 1.4)


def render(spec: FigureSpec):
    """Render the figure and write it to spec.output.

    Returns the matplotlib Figure so callers (and tests) can inspect the
    drawn artists.
    """
    n = len(spec.panels)
    if spec.figure_class == "bifurcation":
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.6))
        _draw_bifurcation(axes, spec.panels[0])
    else:
        fig, axes = plt.subplots(1, n, figsize=(4.2 * n, 3.6), squeeze=False)
        axes = axes[0]
        draw = {
            "timeseries": _draw_timeseries,
            "regimes": _draw_timeseries,
            "phase": _draw_phase,
            "phi-curve": _draw_phi,
            "staircase": _draw_staircase,
            "table": _draw_table,
        }[spec.figure_class]
        for ax, panel in zip(axes, spec.panels):
            draw(ax, panel)
            if panel.title:
                ax.set_title(panel.title, fontsize=10)
    fig.tight_layout()
    out = Path(spec.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, dpi=150)
    return fig
