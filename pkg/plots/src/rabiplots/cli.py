"""plot <kind> --input <csv> [--patterns <csv>] --output <file>"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .reader import InputError
from .render import KINDS, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render rabipat CSV output as figures (SVG/PNG by extension)",
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument("--input", type=Path, required=True, help="primary CSV input")
    parser.add_argument("--patterns", type=Path, default=None,
                        help="patterns.csv (used by kind=patterns; defaults to --input)")
    parser.add_argument("--output", type=Path, required=True, help="figure file to write")
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 2
    try:
        render(args.kind, args.input, args.patterns, args.output)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
