"""Build figure specs from a scenario summary JSON.

The summary carries the file manifest and every analytic reference value
(equilibria, thresholds, floors); this module only rearranges them into
FigureSpec objects.  Input CSV paths are resolved relative to the summary
file; the output image lands next to it unless outdir says otherwise.
"""

from __future__ import annotations

import json
from pathlib import Path

from .figures import FigureSpec, Panel, PlotkitError


def _first_number(value):
    if isinstance(value, bool):
        return None
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, list):
        for v in value:
            n = _first_number(v)
            if n is not None:
                return n
    return None


def _line_references(refs: dict) -> dict:
    """Keep only what the renderer draws: equilibrium shares and the
    symmetric closed forms."""
    out: dict = {}
    eq = refs.get("equilibrium")
    if isinstance(eq, dict):
        out["equilibrium"] = {k: float(eq[k]) for k in ("L", "R", "C")}
    elif eq == "CentristOnly":
        out["equilibrium"] = eq
    for key in ("P_star", "C_star"):
        if isinstance(refs.get(key), (int, float)):
            out[key] = float(refs[key])
    return out


def _case_floors(entry: dict) -> list[float]:
    shocks = entry.get("shocks")
    if not shocks:
        return []
    reports = shocks if isinstance(shocks, list) else [shocks]
    floors: list[float] = []
    for rep in reports:
        for rec in rep.get("records", []):
            f = rec.get("floor")
            if isinstance(f, (int, float)) and f not in floors:
                floors.append(float(f))
    return floors


def _trajectory_panels(summary: dict, base: Path, figure: str) -> list[Panel]:
    panels = []
    for entry in summary.get("cases", []):
        paths = tuple(str(base / f["path"]) for f in entry["files"])
        refs = _line_references(entry.get("references", {}))
        if figure in ("regimes", "staircase"):
            floors = _case_floors(entry)
            if floors:
                refs["floors"] = floors
        if figure == "phase":
            panels.append(Panel(title=entry["name"], inputs=paths,
                                references=refs))
        elif figure == "staircase":
            # Last file in the entry is the per-shock table.
            traj = tuple(p for p in paths if not p.endswith("_shocks.csv"))
            shocks = tuple(p for p in paths if p.endswith("_shocks.csv"))
            panels.append(Panel(title=entry["name"],
                                inputs=traj[:1] + shocks,
                                references=refs))
        else:
            for path in paths:
                panels.append(Panel(title=entry["name"], inputs=(path,),
                                    references=refs))
    return panels


def _sweep_panel(summary: dict, base: Path) -> Panel:
    path = str(base / summary["files"][0]["path"])
    curves = []
    for c in summary.get("curves", []):
        item = {"name": c["name"]}
        if "gamma_star" in c:
            item["gamma_star"] = _first_number(c["gamma_star"])
        if "delta_c" in c:
            item["delta_c"] = _first_number(c["delta_c"])
        curves.append(item)
    return Panel(title=summary["name"], inputs=(path,),
                 references={"curves": curves})


def specs_from_summary(summary_path: str | Path,
                       outdir: str | Path | None = None) -> list[FigureSpec]:
    summary_path = Path(summary_path)
    summary = json.loads(summary_path.read_text(encoding="utf-8"))
    base = summary_path.parent
    out = Path(outdir) if outdir is not None else base
    figure = summary.get("figure")
    if figure is None:
        raise PlotkitError(f"{summary_path}: summary declares no figure class")
    output = str(out / f"{summary['name']}.png")

    if figure in ("timeseries", "phase", "regimes", "staircase"):
        panels = _trajectory_panels(summary, base, figure)
    elif figure in ("bifurcation", "phi-curve"):
        panels = [_sweep_panel(summary, base)]
    elif figure == "table":
        path = str(base / summary["files"][0]["path"])
        panels = [Panel(title=summary["name"], inputs=(path,))]
    else:
        raise PlotkitError(f"{summary_path}: unknown figure class {figure!r}")

    return [FigureSpec(figure_class=figure, output=output,
                       panels=tuple(panels))]
