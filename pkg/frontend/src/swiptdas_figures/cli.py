"""swiptdas-figures command line: render sweep CSVs to image files."""

from __future__ import annotations

import argparse
import sys

from .figures import SchemaError, render_figures


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="swiptdas-figures",
        description="Render the standard figure set from swiptdas sweep output.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p_render = sub.add_parser("render", help="render four figures from a sweep directory")
    p_render.add_argument(
        "--in", dest="in_dir", required=True, help="directory holding the sweep CSVs"
    )
    p_render.add_argument("--out", required=True, help="output directory for images")
    p_render.add_argument("--format", choices=("png", "pdf"), default="png")
    args = parser.parse_args(argv)

    try:
        written = render_figures(args.in_dir, args.out, args.format)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
