"""Command-line front end: ``suncontrol analyze`` and ``suncontrol batch``.

Exit codes: 0 analysis completed (whatever the decision), 1 input error,
2 internal-consistency error or a criterion contradicting the rank condition.
"""
from __future__ import annotations

import argparse
import json
import sys

from .batch import check_violations, format_summary, run_batch
from .criteria import evaluate
from .documents import build_report, dumps, format_text, parse_document
from .errors import ClosureNotConverged, ConsistencyError, InputError
from .system import Tolerances

_DEFAULTS = Tolerances()


def _add_tolerance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-root", type=float, default=None,
                   help=f"relative tolerance for equal transition frequencies (default {_DEFAULTS.root_eq:g})")
    p.add_argument("--tol-rank", type=float, default=None,
                   help=f"relative rank tolerance of the bracket closure (default {_DEFAULTS.rank:g})")
    p.add_argument("--tol-edge", type=float, default=None,
                   help=f"relative threshold for a coupling entry to count as an edge (default {_DEFAULTS.edge:g})")
    p.add_argument("--format", choices=("json", "text"), default="json")


def _overrides(args) -> dict:
    return {"root_eq": args.tol_root, "rank": args.tol_rank, "edge": args.tol_edge}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="suncontrol",
                                     description="Decide controllability of bilinear quantum systems on SU(N)")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse one system description (JSON)")
    a.add_argument("path", nargs="?", default="-", help="input file, or - for stdin (default)")
    a.add_argument("--oracle", action="store_true", help="also run the Lie-closure rank check")
    _add_tolerance_flags(a)

    b = sub.add_parser("batch", help="criteria versus rank condition on random systems")
    b.add_argument("--gen", default="generic",
                   help="generic | resonant[:k] | equispaced | dipole | block[:p] (default generic)")
    b.add_argument("-n", "--levels", type=int, default=4, help="number of levels N (default 4)")
    b.add_argument("--count", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--no-oracle", dest="oracle", action="store_false", help="skip the rank check")
    b.add_argument("--jsonl", default=None, help="write one JSON report per system to this file")
    _add_tolerance_flags(b)
    return parser


def _analyze(args) -> int:
    if args.path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {args.path}: {exc.strerror}") from None
    system = parse_document(text, _overrides(args))
    report = build_report(evaluate(system, with_oracle=args.oracle))
    print(dumps(report) if args.format == "json" else format_text(report))
    return 0


def _batch(args) -> int:
    if args.count < 1:
        raise InputError("--count must be >= 1")
    if args.levels < 2:
        raise InputError("--levels must be >= 2")
    tol = Tolerances(**{
        k: v for k, v in (("root_eq", args.tol_root), ("rank", args.tol_rank), ("edge", args.tol_edge))
        if v is not None
    })
    out = open(args.jsonl, "w", encoding="utf-8") if args.jsonl else None
    try:
        summary = run_batch(args.gen, args.levels, args.count, args.seed, args.oracle, tol, out)
    finally:
        if out is not None:
            out.close()
    print(json.dumps(summary, indent=2) if args.format == "json" else format_summary(summary))
    check_violations(summary)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            return _analyze(args)
        return _batch(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConsistencyError, ClosureNotConverged) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
