"""Command line wrapper: qotto-render <csv> --kind <k> --out <img>."""

from __future__ import annotations

import argparse
import sys

from .render import FIGURE_KINDS, FigureSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qotto-render",
        description="Render a qotto CSV table into a figure",
    )
    parser.add_argument("csv", help="input CSV produced by the qotto CLI")
    parser.add_argument("--kind", required=True, choices=FIGURE_KINDS,
                        help="figure kind")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--title", default="", help="optional figure title")
    args = parser.parse_args(argv)

    spec = FigureSpec(csv_path=args.csv, figure_kind=args.kind,
                      output_path=args.out, title=args.title)
    try:
        path = render(spec)
    except (SchemaError, OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
