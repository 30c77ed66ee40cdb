"""Command line: render benchmark CSV files into threshold figures.

Exit codes: 0 ok, 1 runtime failure (bad file, bad schema), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .reader import SchemaError, UsageError
from .render import PlotSpec, render_curves


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Plot logical-error-rate curves from benchmark CSV output.",
    )
    parser.add_argument("--in", dest="inputs", action="append", required=True,
                        help="input CSV (repeatable)")
    parser.add_argument("--decoder", help="keep only rows for this decoder id")
    parser.add_argument("--eta", type=float, help="keep only rows at this bias")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--logy", action="store_true", help="logarithmic P_L axis")
    parser.add_argument("--zoom", nargs=2, type=float, metavar=("P_LO", "P_HI"),
                        help="restrict the p axis to a window")
    return parser


def main(argv=None) -> int:
    namespace = build_parser().parse_args(argv)
    if namespace.zoom is not None and namespace.zoom[0] >= namespace.zoom[1]:
        print("usage error: zoom window must satisfy p_lo < p_hi", file=sys.stderr)
        return 2
    spec = PlotSpec(
        inputs=tuple(namespace.inputs),
        out=namespace.out,
        decoder=namespace.decoder,
        eta=namespace.eta,
        logy=namespace.logy,
        zoom=tuple(namespace.zoom) if namespace.zoom else None,
    )
    try:
        report = render_curves(spec)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {report.path}: {report.curves} curves, "
        f"{sum(report.points_per_curve.values())} points"
        + (f", crossing at p = {report.crossing:.4f}" if report.crossing else "")
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
