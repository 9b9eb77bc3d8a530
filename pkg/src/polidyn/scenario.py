"""Declarative scenario configs, runners, and CSV/JSON emission.

A scenario is a YAML document describing one figure or table: a model
kind, parameter set(s), initial state(s), optional shock sequence or
sweep axis, and integrator settings.  Unknown keys are rejected with the
full key path so typos fail loudly.  All tabular output is CSV (comma,
header row, UTF-8, LF, 17-significant-digit decimals) and every run
writes a summary JSON carrying the analytic reference values alongside
the simulated terminals, plus a manifest of emitted files with row
counts.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import yaml

from .errors import (
    CENTRIST_ONLY,
    MONOTONE_DECAY,
    SHOCK_PROOF,
    BaselineSupercritical,
    ConfigError,
    FormulaInapplicable,
    PolidynError,
    RegimeError,
    _Marker,
)
from .diagnostics import (
    DiagnosticReport,
    a_decay_check,
    boundary_inflow_check,
    dulac_check,
    invariance_check,
    lyapunov_trace,
    single_attractor_check,
)
from .dynamics import IntegratorConfig, Trajectory, integrate
from .equilibria import (
    classify,
    interior_equilibrium,
    symmetric_equilibrium,
)
from .dynamics import jacobian_baseline
from .model_core import (
    BaselineParams,
    FourGroupParams,
    SimplexState3,
    SimplexState4,
    SymmetricParams,
    proxy_decompose,
)
from .shock_engine import (
    ShockEvent,
    kstar,
    longrun_floor,
    run_shock_sequence,
    surge_end_time,
    window_bound_asym,
)
from .spectral import (
    d_matrix,
    delta_c_asym,
    delta_c_sym,
    k_matrix,
    m_matrix,
    phi,
    r_rad,
)

#: Verification sweeps draw from numpy's default PCG64 generator; the
#: algorithm is fixed here so runs are reproducible across machines.
DEFAULT_SEED = 20250823

#: Bundestag elections as (year, radical vote share of votes cast,
#: turnout); fractions of the eligible electorate follow by V = share x
#: turnout, A = 1 - turnout.
GERMANY_ELECTIONS: tuple[tuple[str, float, float], ...] = (
    ("2013", 0.095 / 0.715, 0.715),
    ("2017", 0.166 / 0.762, 0.762),
    ("2021", 0.116 / 0.766, 0.766),
    ("2025", 0.246 / 0.830, 0.830),
)

_FIGURE_CLASSES = (
    "timeseries", "phase", "bifurcation", "regimes",
    "staircase", "phi-curve", "table",
)

_SYMMETRIC_KEYS = {"alpha", "gamma", "mu", "delta", "rho"}
_FULL_BASE_KEYS = {"alpha_L", "alpha_R", "mu_L", "mu_R", "gamma_RL", "gamma_LR"}
_FULL_EXT_KEYS = {"delta_L", "delta_R", "rho"}


def _fmt(x: float) -> str:
    """17 significant digits: exact round-trip for IEEE doubles."""
    return f"{x:.17g}"


def _reject_unknown(mapping: dict, allowed: set[str], path: str) -> None:
    for key in mapping:
        if key not in allowed:
            raise ConfigError(path, f"unknown key {key!r} (allowed: {sorted(allowed)})")


def _require(mapping: dict, key: str, path: str):
    if key not in mapping:
        raise ConfigError(path, f"missing required key {key!r}")
    return mapping[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def _jsonable(value):
    if isinstance(value, _Marker):
        return repr(value)
    if isinstance(value, (SimplexState3, SimplexState4)):
        d = {"L": value.L, "R": value.R, "C": value.C}
        if isinstance(value, SimplexState4):
            d["A"] = value.A
        return d
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    return value


def parse_params(node: Any, model: str, path: str):
    """Parse a params mapping into BaselineParams or FourGroupParams.

    Symmetric form: alpha, gamma, mu (+ delta, rho for the four-group
    model).  Full form: the six asymmetric rates (+ delta_L, delta_R,
    rho).  The two key sets must not be mixed.
    """
    if not isinstance(node, dict):
        raise ConfigError(path, "params must be a mapping")
    keys = set(node)
    # rho is legal in both forms; the six asymmetric base rates decide.
    full = bool(keys & _FULL_BASE_KEYS)
    if full and keys & (_SYMMETRIC_KEYS - {"rho"}):
        raise ConfigError(path, "mix of symmetric and full parameter keys")
    try:
        if not full:
            _reject_unknown(node, _SYMMETRIC_KEYS, path)
            sp = SymmetricParams(**{k: _number(v, f"{path}.{k}")
                                    for k, v in node.items()})
            if model == "4group":
                return sp.to_fourgroup()
            return sp.to_baseline()
        _reject_unknown(node, _FULL_BASE_KEYS | _FULL_EXT_KEYS, path)
        for k in sorted(_FULL_BASE_KEYS):
            _require(node, k, path)
        base = BaselineParams(**{k: _number(node[k], f"{path}.{k}")
                                 for k in _FULL_BASE_KEYS})
        if model == "4group":
            for k in _FULL_EXT_KEYS:
                _require(node, k, path)
            return FourGroupParams(
                base=base,
                delta_L=_number(node["delta_L"], f"{path}.delta_L"),
                delta_R=_number(node["delta_R"], f"{path}.delta_R"),
                rho=_number(node["rho"], f"{path}.rho"),
            )
        if keys & _FULL_EXT_KEYS:
            raise ConfigError(path, "delta/rho rates given for a baseline model")
        return base
    except PolidynError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(path, str(exc)) from exc
    except TypeError as exc:
        raise ConfigError(path, str(exc)) from exc


def _parse_initial(node: Any, model: str, path: str):
    if not isinstance(node, dict):
        raise ConfigError(path, "initial state must be a mapping")
    allowed = {"L", "R"} | ({"A"} if model == "4group" else set())
    _reject_unknown(node, allowed, path)
    L = _number(_require(node, "L", path), f"{path}.L")
    R = _number(_require(node, "R", path), f"{path}.R")
    if model == "4group":
        A = _number(node.get("A", 0.0), f"{path}.A")
        state = SimplexState4(L, R, A)
    else:
        state = SimplexState3(L, R)
    coords = state.as_tuple()
    if any(c < 0.0 for c in coords) or sum(coords) > 1.0:
        raise ConfigError(path, f"initial state {coords} outside the simplex")
    return state


def _parse_shock(node: Any, t_end: float, path: str) -> ShockEvent:
    if not isinstance(node, dict):
        raise ConfigError(path, "shock must be a mapping")
    _reject_unknown(node, {"time", "delta", "dbeta", "params", "raw_s"}, path)
    time = _number(_require(node, "time", path), f"{path}.time")
    if not 0.0 <= time <= t_end:
        raise ConfigError(f"{path}.time", f"shock time {time} outside [0, {t_end}]")
    new_params = None
    if "params" in node:
        new_params = parse_params(node["params"], "4group", f"{path}.params")
    try:
        return ShockEvent(
            time=time,
            delta=_number(node.get("delta", 0.0), f"{path}.delta"),
            dbeta=_number(node.get("dbeta", 0.0), f"{path}.dbeta"),
            new_params=new_params,
            raw_s=(None if "raw_s" not in node
                   else _number(node["raw_s"], f"{path}.raw_s")),
        )
    except PolidynError as exc:
        raise ConfigError(path, str(exc)) from exc


def _parse_integrator(node: Any, path: str) -> IntegratorConfig:
    if node is None:
        return IntegratorConfig()
    if not isinstance(node, dict):
        raise ConfigError(path, "integrator must be a mapping")
    allowed = {"rel_tol", "abs_tol", "max_step", "t_end", "sample_interval"}
    _reject_unknown(node, allowed, path)
    kwargs = {k: _number(v, f"{path}.{k}") for k, v in node.items()}
    try:
        return IntegratorConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


@dataclass(frozen=True)
class CaseConfig:
    name: str
    params: BaselineParams | FourGroupParams
    initials: tuple
    shocks: tuple[ShockEvent, ...]


@dataclass(frozen=True)
class SweepConfig:
    quantity: str            # "equilibrium" | "phi"
    param: str
    start: float
    stop: float
    step: float
    curves: tuple[tuple[str, Any], ...]  # (name, params)


@dataclass(frozen=True)
class Calibration:
    beta0: float
    mu: float
    dbetas: tuple[float, ...]


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    kind: str                # simulate | sweep | staircase | germany
    figure: str | None
    model: str | None
    integrator: IntegratorConfig
    cases: tuple[CaseConfig, ...] = ()
    sweep: SweepConfig | None = None
    a_background: float | None = None
    calibration: Calibration | None = None


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(str(path), "config file not found")
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(str(path), f"not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(str(path), "top level must be a mapping")
    return parse_config(doc, str(path))


def parse_config(doc: dict, where: str) -> ScenarioConfig:
    allowed = {"name", "kind", "figure", "model", "integrator",
               "a_background", "cases", "sweep", "calibration"}
    _reject_unknown(doc, allowed, where)
    name = _require(doc, "name", where)
    kind = _require(doc, "kind", where)
    if kind not in ("simulate", "sweep", "staircase", "germany"):
        raise ConfigError(f"{where}.kind", f"unknown kind {kind!r}")
    figure = doc.get("figure")
    if figure is not None and figure not in _FIGURE_CLASSES:
        raise ConfigError(f"{where}.figure",
                          f"unknown figure class {figure!r} (one of {_FIGURE_CLASSES})")
    integrator = _parse_integrator(doc.get("integrator"), f"{where}.integrator")
    a_bg = doc.get("a_background")
    if a_bg is not None:
        a_bg = _number(a_bg, f"{where}.a_background")

    model = doc.get("model")
    cases: tuple[CaseConfig, ...] = ()
    sweep = None
    calibration = None

    if kind in ("simulate", "staircase"):
        if model not in ("baseline", "4group"):
            raise ConfigError(f"{where}.model",
                              f"model must be 'baseline' or '4group', got {model!r}")
        raw_cases = _require(doc, "cases", where)
        if not isinstance(raw_cases, list) or not raw_cases:
            raise ConfigError(f"{where}.cases", "must be a non-empty list")
        parsed = []
        for i, node in enumerate(raw_cases):
            cpath = f"{where}.cases[{i}]"
            if not isinstance(node, dict):
                raise ConfigError(cpath, "case must be a mapping")
            _reject_unknown(node, {"name", "params", "initial", "initials", "shocks"},
                            cpath)
            cname = str(_require(node, "name", cpath))
            params = parse_params(_require(node, "params", cpath), model,
                                  f"{cpath}.params")
            if ("initial" in node) == ("initials" in node):
                raise ConfigError(cpath, "give exactly one of 'initial' or 'initials'")
            if "initial" in node:
                initials = (_parse_initial(node["initial"], model,
                                           f"{cpath}.initial"),)
            else:
                raw = node["initials"]
                if not isinstance(raw, list) or not raw:
                    raise ConfigError(f"{cpath}.initials", "must be a non-empty list")
                initials = tuple(
                    _parse_initial(n, model, f"{cpath}.initials[{j}]")
                    for j, n in enumerate(raw)
                )
            shocks = ()
            if "shocks" in node:
                if model != "4group":
                    raise ConfigError(f"{cpath}.shocks",
                                      "shocks require the 4group model")
                raw = node["shocks"]
                if not isinstance(raw, list):
                    raise ConfigError(f"{cpath}.shocks", "must be a list")
                shocks = tuple(
                    _parse_shock(n, integrator.t_end, f"{cpath}.shocks[{j}]")
                    for j, n in enumerate(raw)
                )
            parsed.append(CaseConfig(cname, params, initials, shocks))
        cases = tuple(parsed)
        if kind == "staircase" and not all(c.shocks for c in cases):
            raise ConfigError(f"{where}.cases", "staircase cases need shocks")

    elif kind == "sweep":
        node = _require(doc, "sweep", where)
        spath = f"{where}.sweep"
        if not isinstance(node, dict):
            raise ConfigError(spath, "sweep must be a mapping")
        _reject_unknown(node, {"quantity", "param", "start", "stop", "step",
                               "curves"}, spath)
        quantity = _require(node, "quantity", spath)
        if quantity not in ("equilibrium", "phi"):
            raise ConfigError(f"{spath}.quantity",
                              f"must be 'equilibrium' or 'phi', got {quantity!r}")
        param = str(_require(node, "param", spath))
        expected = "gamma" if quantity == "equilibrium" else "delta_shock"
        if param != expected:
            raise ConfigError(f"{spath}.param",
                              f"{quantity} sweeps run over {expected!r}, got {param!r}")
        start = _number(_require(node, "start", spath), f"{spath}.start")
        stop = _number(_require(node, "stop", spath), f"{spath}.stop")
        step = _number(_require(node, "step", spath), f"{spath}.step")
        if not (step > 0 and stop >= start):
            raise ConfigError(spath, "need step > 0 and stop >= start")
        raw_curves = _require(node, "curves", spath)
        if not isinstance(raw_curves, list) or not raw_curves:
            raise ConfigError(f"{spath}.curves", "must be a non-empty list")
        curves = []
        cmodel = "4group" if quantity == "phi" else "baseline"
        for i, cn in enumerate(raw_curves):
            cpath = f"{spath}.curves[{i}]"
            if not isinstance(cn, dict):
                raise ConfigError(cpath, "curve must be a mapping")
            _reject_unknown(cn, {"name", "params"}, cpath)
            curves.append((
                str(_require(cn, "name", cpath)),
                parse_params(_require(cn, "params", cpath), cmodel,
                             f"{cpath}.params"),
            ))
        sweep = SweepConfig(quantity, param, start, stop, step, tuple(curves))

    else:  # germany
        node = _require(doc, "calibration", where)
        cpath = f"{where}.calibration"
        if not isinstance(node, dict):
            raise ConfigError(cpath, "calibration must be a mapping")
        _reject_unknown(node, {"beta0", "mu", "dbetas"}, cpath)
        dbetas = _require(node, "dbetas", cpath)
        if not isinstance(dbetas, list) or not dbetas:
            raise ConfigError(f"{cpath}.dbetas", "must be a non-empty list")
        calibration = Calibration(
            beta0=_number(_require(node, "beta0", cpath), f"{cpath}.beta0"),
            mu=_number(_require(node, "mu", cpath), f"{cpath}.mu"),
            dbetas=tuple(_number(v, f"{cpath}.dbetas[{i}]")
                         for i, v in enumerate(dbetas)),
        )
        if a_bg is None:
            raise ConfigError(where, "germany scenarios require a_background")

    return ScenarioConfig(
        name=str(name), kind=kind, figure=figure, model=model,
        integrator=integrator, cases=cases, sweep=sweep,
        a_background=a_bg, calibration=calibration,
    )


def write_csv(path: Path, header: list[str], rows: list[list]) -> int:
    """Write rows with 17-significant-digit floats; returns the row count."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) if isinstance(v, float) else v for v in row])
    return len(rows)


def _traj_rows(traj: Trajectory) -> tuple[list[str], list[list]]:
    four = isinstance(traj.states[0], SimplexState4)
    header = ["t", "L", "R", "C"] + (["A"] if four else [])
    rows = []
    for t, s in zip(traj.times, traj.states):
        row = [float(t), s.L, s.R, s.C]
        if four:
            row.append(s.A)
        rows.append(row)
    return header, rows


def _baseline_references(p: BaselineParams) -> dict:
    refs: dict[str, Any] = {"r_rad": r_rad(p)}
    eq = interior_equilibrium(p)
    if eq is CENTRIST_ONLY:
        refs["equilibrium"] = repr(CENTRIST_ONLY)
    else:
        L, R, C = eq
        refs["equilibrium"] = {"L": L, "R": R, "C": C}
        refs["classification"] = _jsonable(
            classify(jacobian_baseline(p, SimplexState3(L, R)))
        )
    if p.is_symmetric:
        beta, mu = p.alpha_L + p.gamma_RL, p.mu_L
        refs["beta"] = beta
        refs["mu"] = mu
        sym = symmetric_equilibrium(beta, mu)
        if sym is not CENTRIST_ONLY:
            refs["P_star"], refs["C_star"] = sym
    return refs


def _fourgroup_references(p: FourGroupParams, shocks) -> dict:
    refs = _baseline_references(p.base)
    K, M, D = k_matrix(p.base), m_matrix(p.base), d_matrix(p)
    try:
        refs["delta_c_asym"] = _jsonable(delta_c_asym(K, M, D))
    except BaselineSupercritical:
        refs["delta_c_asym"] = "BaselineSupercritical"
    if p.is_symmetric:
        beta, mu = refs["beta"], refs["mu"]
        try:
            refs["delta_c"] = _jsonable(delta_c_sym(beta, mu, p.delta_L))
        except (RegimeError, FormulaInapplicable) as exc:
            refs["delta_c"] = type(exc).__name__
    for shock in shocks:
        if shock.delta > 0.0 and refs["r_rad"] < 1.0:
            wb = window_bound_asym(shock.delta, p)
            refs.setdefault("window_bounds", []).append({
                "time": shock.time, "delta": shock.delta,
                "bound": _jsonable(wb if wb is MONOTONE_DECAY
                                   else {"delta_q": wb[0], "t_q_star": wb[1]}),
            })
    return refs


def run_simulate(cfg: ScenarioConfig, outdir: Path) -> dict:
    summary: dict[str, Any] = {
        "name": cfg.name, "kind": cfg.kind, "figure": cfg.figure, "cases": [],
    }
    if cfg.a_background is not None:
        summary["a_background"] = cfg.a_background
    manifest = []
    for case in cfg.cases:
        if isinstance(case.params, FourGroupParams):
            refs = _fourgroup_references(case.params, case.shocks)
        else:
            refs = _baseline_references(case.params)
        entry: dict[str, Any] = {"name": case.name, "references": refs}
        files = []
        terminals = []
        shock_reports = []
        for i, s0 in enumerate(case.initials):
            if case.shocks:
                traj, report = run_shock_sequence(
                    case.params, s0, list(case.shocks), cfg.integrator
                )
                shock_reports.append(_shock_report_json(report, traj))
            else:
                traj = integrate(case.params, s0, cfg.integrator)
            suffix = f"_ic{i}" if len(case.initials) > 1 else ""
            fname = f"{cfg.name}_{case.name}{suffix}.csv"
            header, rows = _traj_rows(traj)
            n = write_csv(outdir / fname, header, rows)
            files.append({"path": fname, "rows": n})
            terminals.append(_jsonable(traj.final_state))
        entry["terminal"] = terminals[0] if len(terminals) == 1 else terminals
        if shock_reports:
            entry["shocks"] = shock_reports[0] if len(shock_reports) == 1 \
                else shock_reports
        entry["files"] = files
        manifest.extend(files)
        summary["cases"].append(entry)
    summary["files"] = manifest
    return summary


def _shock_report_json(report, traj: Trajectory) -> dict:
    records = []
    for r in report.records:
        rec = {
            "index": r.index, "time": r.time, "delta": r.delta,
            "dbeta": r.dbeta, "b_k": r.b_k, "r_rad": r.r_rad,
            "regime_before": r.regime_before, "regime_after": r.regime_after,
            "floor": r.floor, "surge": r.surge,
            "window_bound": r.window_bound,
        }
        if r.surge:
            end = surge_end_time(traj, r.time)
            rec["surge_end"] = end
        records.append(rec)
    return {"records": records, "k_star": report.k_star}


def run_staircase(cfg: ScenarioConfig, outdir: Path) -> dict:
    summary = run_simulate(cfg, outdir)
    for case, entry in zip(cfg.cases, summary["cases"]):
        records = entry["shocks"]["records"]
        rows = [[r["index"], float(r["time"]), float(r["delta"]),
                 float(r["dbeta"]),
                 float("nan") if r["b_k"] is None else float(r["b_k"]),
                 r["regime_after"], float(r["floor"])]
                for r in records]
        fname = f"{cfg.name}_{case.name}_shocks.csv"
        n = write_csv(outdir / fname,
                      ["k", "t_k", "delta_k", "dbeta_k", "B_k", "regime", "floor"],
                      rows)
        entry["files"].append({"path": fname, "rows": n})
        summary["files"].append({"path": fname, "rows": n})
    return summary


def _sweep_grid(sw: SweepConfig) -> list[float]:
    n = int(round((sw.stop - sw.start) / sw.step))
    grid = [sw.start + i * sw.step for i in range(n + 1)]
    if grid[-1] > sw.stop + 1e-12:
        grid.pop()
    return grid


def run_sweep(cfg: ScenarioConfig, outdir: Path) -> dict:
    sw = cfg.sweep
    summary: dict[str, Any] = {
        "name": cfg.name, "kind": cfg.kind, "figure": cfg.figure,
        "quantity": sw.quantity, "curves": [],
    }
    rows = []
    grid = _sweep_grid(sw)
    if sw.quantity == "equilibrium":
        header = ["curve", "gamma", "beta", "lambda_pf",
                  "P_star", "C_star", "classification"]
        for cname, params in sw.curves:
            if not params.is_symmetric:
                raise ConfigError(cfg.name, f"curve {cname!r}: equilibrium sweeps "
                                            "require symmetric parameters")
            alpha, mu = params.alpha_L, params.mu_L
            gamma_star = mu - alpha
            # The bifurcation point itself is forced onto the grid.
            values = sorted(set(grid) | ({gamma_star} if
                                         sw.start <= gamma_star <= sw.stop else set()))
            for g in values:
                p = BaselineParams(alpha_L=alpha, alpha_R=alpha, mu_L=mu, mu_R=mu,
                                   gamma_RL=g, gamma_LR=g)
                beta = alpha + g
                lam = r_rad(p)
                eq = symmetric_equilibrium(beta, mu)
                if eq is CENTRIST_ONLY:
                    p_star, c_star = 0.0, 1.0
                    cls = "CentristOnly"
                else:
                    p_star, c_star = eq
                    L, R = p_star, p_star
                    cls = _jsonable(classify(jacobian_baseline(p, SimplexState3(L, R))))
                rows.append([cname, float(g), beta, lam, p_star, c_star, cls])
            summary["curves"].append({
                "name": cname, "alpha": alpha, "mu": mu, "gamma_star": gamma_star,
            })
    else:
        header = ["curve", "delta", "phi"]
        for cname, params in sw.curves:
            K, M, D = k_matrix(params.base), m_matrix(params.base), d_matrix(params)
            for d in grid:
                rows.append([cname, float(d), phi(d, K, M, D)])
            try:
                dc = _jsonable(delta_c_asym(K, M, D))
            except BaselineSupercritical:
                dc = "BaselineSupercritical"
            summary["curves"].append({"name": cname, "delta_c": dc})
    fname = f"{cfg.name}.csv"
    n = write_csv(outdir / fname, header, rows)
    summary["files"] = [{"path": fname, "rows": n}]
    return summary


def run_germany(cfg: ScenarioConfig, outdir: Path) -> dict:
    cal = cfg.calibration
    rows = [proxy_decompose(share, turnout, year=year)
            for year, share, turnout in GERMANY_ELECTIONS]
    csv_rows = [[r.year, r.V, r.C, r.A, r.total()] for r in rows]
    fname = f"{cfg.name}_rows.csv"
    n = write_csv(outdir / fname, ["year", "V", "C", "A", "total"], csv_rows)

    b = cal.beta0
    floors = []
    for db in cal.dbetas:
        b += db
        c_floor = longrun_floor(b, cal.mu)
        floors.append({"beta": b, "centrist_floor": c_floor,
                       "radical_floor": 1.0 - c_floor})
    k_star = kstar(cal.beta0, cal.mu, list(cal.dbetas))
    a_exc = [max(0.0, r.A - cfg.a_background) for r in rows]
    summary = {
        "name": cfg.name, "kind": cfg.kind, "figure": cfg.figure,
        "a_background": cfg.a_background,
        "calibration": {"beta0": cal.beta0, "mu": cal.mu,
                        "dbetas": list(cal.dbetas)},
        "rows": [{"year": r.year, "V": r.V, "C": r.C, "A": r.A} for r in rows],
        "floors": floors,
        "k_star": k_star,
        "a_exc": a_exc,
        "files": [{"path": fname, "rows": n}],
    }
    return summary


def run_scenario(cfg: ScenarioConfig, outdir: str | Path) -> dict:
    """Run a parsed scenario and write its outputs; returns the summary,
    which is also written to <name>_summary.json inside outdir."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    runner = {
        "simulate": run_simulate,
        "staircase": run_staircase,
        "sweep": run_sweep,
        "germany": run_germany,
    }[cfg.kind]
    summary = runner(cfg, outdir)
    spath = outdir / f"{cfg.name}_summary.json"
    with open(spath, "w", encoding="utf-8", newline="") as fh:
        json.dump(summary, fh, indent=2, sort_keys=False)
        fh.write("\n")
    return summary


def read_trajectory_csv(path: str | Path) -> tuple[list[str], list[list[float]]]:
    """Read back an emitted CSV; floats parse to the exact written values."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, rows


def _random_baseline(rng: np.random.Generator) -> BaselineParams:
    # Log-uniform draws over two decades keep all regimes represented.
    draw = lambda: float(np.exp(rng.uniform(np.log(0.02), np.log(1.0))))
    return BaselineParams(alpha_L=draw(), alpha_R=draw(), mu_L=draw(),
                          mu_R=draw(), gamma_RL=draw(), gamma_LR=draw())


def _random_fourgroup(rng: np.random.Generator) -> FourGroupParams:
    draw = lambda: float(np.exp(rng.uniform(np.log(0.02), np.log(1.0))))
    return FourGroupParams(base=_random_baseline(rng), delta_L=draw(),
                           delta_R=draw(), rho=draw())


def _random_state3(rng: np.random.Generator) -> SimplexState3:
    L, R, _ = rng.dirichlet((1.0, 1.0, 1.0))
    return SimplexState3(float(L), float(R))


def _random_state4(rng: np.random.Generator) -> SimplexState4:
    L, R, A, _ = rng.dirichlet((1.0, 1.0, 1.0, 1.0))
    return SimplexState4(float(L), float(R), float(A))


def run_verify(seed: int = DEFAULT_SEED, samples: int = 1,
               full: bool = False) -> list[DiagnosticReport]:
    """Seeded verification sweep across random parameter draws.

    `samples` scales every batch size linearly; --full multiplies by 10.
    """
    scale = samples * (10 if full else 1)
    rng = np.random.default_rng(seed)
    reports: list[DiagnosticReport] = []
    short = IntegratorConfig(rel_tol=1e-8, abs_tol=1e-10, max_step=1.0,
                             t_end=40.0, sample_interval=1.0)

    for _ in range(max(1, 2 * scale)):
        reports.append(dulac_check(_random_baseline(rng), rng,
                                   n_points=500 * scale))

    for _ in range(max(1, 2 * scale)):
        p3 = _random_baseline(rng)
        traj = integrate(p3, _random_state3(rng), short)
        reports.append(invariance_check(traj))
        if r_rad(p3) < 1.0:
            reports.append(lyapunov_trace("subcritical-baseline", p3, traj))

    for _ in range(max(1, 2 * scale)):
        p4 = _random_fourgroup(rng)
        traj = integrate(p4, _random_state4(rng), short)
        reports.append(invariance_check(traj))
        reports.append(a_decay_check(p4, traj))
        if r_rad(p4.base) < 1.0:
            reports.append(lyapunov_trace("subcritical-4group", p4, traj))

    reports.append(boundary_inflow_check(_random_baseline(rng)))
    reports.append(boundary_inflow_check(_random_fourgroup(rng), n_samples=60))

    # Radical-free axis is invariant: unseeded runs keep L = R = 0 exactly.
    p4 = _random_fourgroup(rng)
    traj = integrate(p4, SimplexState4(0.0, 0.0, 0.6), short)
    worst = max(max(s.L, s.R) for s in traj.states)
    reports.append(DiagnosticReport("unseeded_axis_invariant",
                                    len(traj.states), worst, worst == 0.0))

    reports.append(single_attractor_check(
        _random_baseline(rng), rng, n_initial=max(10, 10 * scale),
        cfg=IntegratorConfig(rel_tol=1e-10, abs_tol=1e-12, max_step=1.0,
                             t_end=3000.0, sample_interval=100.0),
    ))
    return reports


def compute_thresholds(params, delta_shock: float | None = None) -> dict:
    """All threshold quantities derivable from one parameter set."""
    base = params.base if isinstance(params, FourGroupParams) else params
    out: dict[str, Any] = {"r_rad": r_rad(base)}
    eq = interior_equilibrium(base)
    out["equilibrium"] = _jsonable(eq if eq is CENTRIST_ONLY
                                   else {"L": eq[0], "R": eq[1], "C": eq[2]})
    if base.is_symmetric:
        out["beta"] = base.alpha_L + base.gamma_RL
        out["mu"] = base.mu_L
    if not isinstance(params, FourGroupParams):
        return out
    K, M, D = k_matrix(base), m_matrix(base), d_matrix(params)
    try:
        out["delta_c_asym"] = _jsonable(delta_c_asym(K, M, D))
    except BaselineSupercritical:
        out["delta_c_asym"] = "BaselineSupercritical"
    if params.is_symmetric:
        try:
            out["delta_c"] = _jsonable(
                delta_c_sym(out["beta"], out["mu"], params.delta_L))
        except (RegimeError, FormulaInapplicable) as exc:
            out["delta_c"] = type(exc).__name__
    if delta_shock is not None:
        out["delta_shock"] = delta_shock
        if out["r_rad"] < 1.0:
            wb = window_bound_asym(delta_shock, params)
            out["window"] = _jsonable(
                wb if wb is MONOTONE_DECAY
                else {"delta_q": wb[0], "t_q_star": wb[1]})
        if params.is_symmetric and isinstance(out.get("delta_c"), float):
            if delta_shock >= out["delta_c"]:
                out["t_star"] = math.log(delta_shock / out["delta_c"]) / params.rho
    return out
