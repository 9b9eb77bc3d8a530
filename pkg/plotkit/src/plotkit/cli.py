"""Command line entry point: render figures from scenario outputs."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib.pyplot as plt

from .build import specs_from_summary
from .figures import FigureSpec, PlotkitError, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="Render figures from scenario CSV/JSON outputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    rd = sub.add_parser("render", help="render one spec or a whole directory")
    group = rd.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", help="figure spec JSON file")
    group.add_argument("--summary", help="scenario summary JSON file")
    group.add_argument("--all", metavar="DIR",
                       help="render every *_summary.json in DIR")
    rd.add_argument("--out", help="output directory (defaults beside input)")

    args = parser.parse_args(argv)
    try:
        specs: list[FigureSpec] = []
        if args.spec:
            specs = [FigureSpec.from_json(args.spec)]
        elif args.summary:
            specs = specs_from_summary(args.summary, outdir=args.out)
        else:
            summaries = sorted(Path(args.all).glob("*_summary.json"))
            if not summaries:
                print(f"no *_summary.json files in {args.all}", file=sys.stderr)
                return 2
            for s in summaries:
                specs.extend(specs_from_summary(s, outdir=args.out))
        for spec in specs:
            fig = render(spec)
            plt.close(fig)
            print(f"wrote {spec.output}")
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PlotkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
