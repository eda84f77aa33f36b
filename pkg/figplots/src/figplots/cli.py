"""The `plot` command: render one panel from a sweep CSV.

    plot --csv sweep.csv --subsystem ab1c1 --channel damping \
         [--alpha V] [--r V] [--p V] [--method paper|sim] [--value concurrence|l1] \
         --x r [--y p] --out panel.png

Exit codes: 0 success, 1 empty selection or malformed CSV, 2 usage,
3 output write failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .plotting import AXIS_COLUMNS, FigureSpec, SelectionError, build_figure, save_figure
from .reader import CsvFormatError

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plot", description=__doc__)
    parser.add_argument("--csv", required=True, help="sweep CSV produced by `tricoh sweep`/`tricoh figures`")
    parser.add_argument("--subsystem", help="panel filter, e.g. ab1c1")
    parser.add_argument("--channel", help="panel filter, e.g. damping")
    parser.add_argument("--policy", help="panel filter, e.g. reduced_qubit")
    parser.add_argument("--method", default="paper", choices=("paper", "sim"))
    parser.add_argument("--value", default="concurrence", choices=("concurrence", "l1"))
    parser.add_argument("--x", default="r", choices=sorted(AXIS_COLUMNS))
    parser.add_argument("--y", default=None, choices=sorted(AXIS_COLUMNS), help="second axis: render a surface")
    parser.add_argument("--alpha", type=float, default=None, help="fix alpha to this value")
    parser.add_argument("--r", type=float, default=None, help="fix r to this value")
    parser.add_argument("--p", type=float, default=None, help="fix P to this value")
    parser.add_argument("--out", required=True, help="output PNG path")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    fixed = {}
    for axis in ("alpha", "r", "p"):
        value = getattr(args, axis)
        if value is not None:
            fixed[axis] = value
    try:
        spec = FigureSpec(
            csv_path=args.csv,
            out_path=args.out,
            subsystem=args.subsystem,
            channel=args.channel,
            policy=args.policy,
            method=args.method,
            x=args.x,
            y=args.y,
            value=args.value,
            fixed=fixed,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        fig, _ = build_figure(spec)
    except (CsvFormatError, SelectionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    try:
        save_figure(fig, spec.out_path)
    except OSError as exc:
        print(f"error: cannot write {spec.out_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    print(spec.out_path)
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
