"""Command-line entry point: ``fsandwich classify|verify|census``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import BoundExceeded, GenerationIncomplete, ParseError
from .pipeline import EXIT_BOUND, EXIT_PARSE, dumps, run_census, run_classify, run_verify


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fsandwich",
        description="Classify degree-p F-sandwiches of P^n given by a global vector field.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify one vector field and emit its toric data")
    c.add_argument("--input", required=True, help="JSON file {p, m, n, matrix}")
    c.add_argument("--stable", action="store_true", help="omit timing for byte-stable output")
    c.add_argument("--out", help="write the report here instead of stdout")

    v = sub.add_parser("verify", help="run the brute-force oracles on a toric input")
    v.add_argument("--input", required=True)
    v.add_argument("--dmax", type=int, required=True, help="largest degree to compare")
    v.add_argument("--bound", type=int, default=None, help="semigroup search box (default 2p)")
    v.add_argument("--stable", action="store_true")
    v.add_argument("--out")

    s = sub.add_parser("census", help="classify every weight class for given p, n")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--bound", type=int, default=None)
    s.add_argument("--stable", action="store_true")
    s.add_argument("--out")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classify":
            report, code = run_classify(args.input, stable=args.stable)
        elif args.command == "verify":
            report, code = run_verify(args.input, args.dmax, args.bound, stable=args.stable)
        else:
            report, code = run_census(args.p, args.n, args.dmax, args.bound, stable=args.stable)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (BoundExceeded, GenerationIncomplete) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BOUND
    _emit(dumps(report), args.out)
    if code and "error" in report:
        print(f"error: {report['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
