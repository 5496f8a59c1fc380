"""Command-line figure rendering from benchmark CSV files.

    sepca-plot --csv results/desk.csv --figure error-vs-m --out figs/err.png

The error/recall figures read the trial schema and emit one image per
(profile, stage) panel, suffixing the output path; the s-profiles
figure reads a structure-function table; refine-trajectory reads the
per-iteration study schema. ``--dump-data`` writes the plotted arrays
as JSON for testing and downstream use.
"""

from __future__ import annotations

import argparse
import sys

from .figures import FIGURES, FigureSpec, render
from .io import PlotDataError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="sepca-plot", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--csv", required=True, help="input CSV path")
    parser.add_argument("--figure", required=True, choices=FIGURES)
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dump-data", default=None,
                        help="also write the plotted arrays to this JSON path")
    parser.add_argument("--group-by", default=None,
                        help="comma-separated panel grouping columns")
    parser.add_argument("--format", default=None, choices=("png", "pdf"))
    parser.add_argument("--logy", action="store_true",
                        help="log-scale y axis on error figures")
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        spec = FigureSpec(
            input_csv=args.csv,
            figure=args.figure,
            out_image=args.out,
            group_by=tuple(args.group_by.split(",")) if args.group_by else None,
            dump_data=args.dump_data,
            format=args.format,
            logy=args.logy,
        )
        written = render(spec)
    except (PlotDataError, ValueError, OSError) as exc:
        print(f"sepca-plot: error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
