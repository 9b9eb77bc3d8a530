"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from .errors import ConfigError, PolidynError
from .scenario import (
    DEFAULT_SEED,
    compute_thresholds,
    load_config,
    parse_params,
    run_scenario,
    run_verify,
)


def _add_scenario_command(sub, name: str, help_text: str):
    p = sub.add_parser(name, help=help_text)
    p.add_argument("--config", required=True, help="scenario config path")
    p.add_argument("--out", default="out", help="output directory")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polidyn",
        description="Simulation and analysis of conserved-electorate "
                    "polarisation dynamics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _add_scenario_command(sub, "simulate", "integrate trajectory scenario(s)")
    _add_scenario_command(sub, "sweep", "analytic parameter sweep")
    _add_scenario_command(sub, "staircase", "shock sequence with per-shock table")
    _add_scenario_command(sub, "germany", "electorate-proxy table and floors")

    v = sub.add_parser("verify", help="run the seeded verification suites")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--samples", type=int, default=1,
                   help="linear scale on every batch size")
    v.add_argument("--full", action="store_true",
                   help="10x samples in every suite")

    t = sub.add_parser("thresholds",
                       help="print R_rad, critical amplitudes, and window "
                            "bounds for a parameter file")
    t.add_argument("--config", required=True,
                   help="YAML with 'model', 'params', optional 'delta_shock'")
    return parser


def _run_scenario_command(args, expected_kind: str) -> int:
    cfg = load_config(args.config)
    if cfg.kind != expected_kind:
        raise ConfigError(args.config,
                          f"config kind is {cfg.kind!r}; this command runs "
                          f"{expected_kind!r} scenarios")
    summary = run_scenario(cfg, args.out)
    print(f"{cfg.name}: wrote {len(summary['files'])} file(s) "
          f"+ summary to {args.out}")
    return 0


def _run_verify(args) -> int:
    reports = run_verify(seed=args.seed, samples=args.samples, full=args.full)
    failures = 0
    for r in reports:
        print(r)
        if not r.passed:
            failures += 1
    print(f"{len(reports) - failures}/{len(reports)} checks passed "
          f"(seed={args.seed})")
    return 0 if failures == 0 else 1


def _run_thresholds(args) -> int:
    path = Path(args.config)
    if not path.exists():
        raise ConfigError(str(path), "config file not found")
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(str(path), f"not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(str(path), "top level must be a mapping")
    allowed = {"model", "params", "delta_shock"}
    for key in doc:
        if key not in allowed:
            raise ConfigError(str(path), f"unknown key {key!r}")
    model = doc.get("model", "baseline")
    if model not in ("baseline", "4group"):
        raise ConfigError(f"{path}.model", f"unknown model {model!r}")
    if "params" not in doc:
        raise ConfigError(str(path), "missing required key 'params'")
    params = parse_params(doc["params"], model, f"{path}.params")
    delta_shock = doc.get("delta_shock")
    if delta_shock is not None:
        delta_shock = float(delta_shock)
    out = compute_thresholds(params, delta_shock)
    print(json.dumps(out, indent=2))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "thresholds":
            return _run_thresholds(args)
        return _run_scenario_command(args, args.command)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except PolidynError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
