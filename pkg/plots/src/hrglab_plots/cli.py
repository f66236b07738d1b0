"""Command-line front end: one subcommand-free renderer.

Exit codes: 0 on success, 1 when the records fail a cross-check (theory
mismatch, band violation), 2 on invalid input (bad schema, bad flags).
"""

from __future__ import annotations

import argparse
import sys

from .figure import (
    CURVE_FAMILIES,
    BandViolationError,
    PlotSpec,
    TheoryMismatchError,
    render_ratio_plot,
)
from .records import SchemaError


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hrglab-plot",
        description="Render theory ratio curves with empirical medians "
        "from an hrglab record CSV.",
    )
    parser.add_argument("csv", help="input record CSV (v1 schema)")
    parser.add_argument("out", help="output image path (suffix picks the format)")
    parser.add_argument(
        "--curves",
        default=",".join(CURVE_FAMILIES),
        help=f"comma list from {CURVE_FAMILIES}",
    )
    parser.add_argument(
        "--no-overlay",
        action="store_true",
        help="draw theory curves only, ignore empirical rows",
    )
    parser.add_argument(
        "--alpha-range",
        nargs=2,
        type=float,
        default=(0.5, 1.0),
        metavar=("LO", "HI"),
    )
    args = parser.parse_args(argv)
    try:
        spec = PlotSpec(
            csv_path=args.csv,
            out_path=args.out,
            alpha_range=tuple(args.alpha_range),
            curves=frozenset(c for c in args.curves.split(",") if c),
            overlay=not args.no_overlay,
        )
        path = render_ratio_plot(spec)
    except (TheoryMismatchError, BandViolationError) as exc:
        print(f"cross-check failed: {exc}", file=sys.stderr)
        return 1
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
