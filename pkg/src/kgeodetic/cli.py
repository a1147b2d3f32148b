"""Command-line entry point: ``kgeodetic check|audit|search|cages|export``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .audit import FAILS, audit_all
from .formats import (
    ParseError,
    embedded_cages,
    emit_digraph,
    export_dot,
    parse_digraph,
    render_json,
    render_text,
    report_document,
)
from .moore import classify
from .search import CheckpointError, SearchParams, search, verify_result

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INCOMPLETE = 3
EXIT_AUDIT_FAILS = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse exits 2 by default
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load(path: str):
    try:
        return parse_digraph(_read(path))
    except ParseError as exc:
        print(f"{path}: {exc}", file=sys.stderr)
        return None


def _cmd_check(args: argparse.Namespace) -> int:
    g = _load(args.file)
    if g is None:
        return EXIT_PARSE
    doc = report_document(g, classify(g, args.d, args.k))
    sys.stdout.write(render_json(doc) if args.json else render_text(doc))
    return EXIT_OK


def _cmd_audit(args: argparse.Namespace) -> int:
    g = _load(args.file)
    if g is None:
        return EXIT_PARSE
    verdicts = audit_all(g, args.d, args.k)
    doc = report_document(g, classify(g, args.d, args.k), verdicts)
    sys.stdout.write(render_json(doc) if args.json else render_text(doc))
    return EXIT_AUDIT_FAILS if any(v.status == FAILS for v in verdicts) else EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    try:
        params = SearchParams(
            d=args.d,
            k=args.k,
            epsilon=args.e,
            require_diregular=args.diregular,
            max_nodes=args.max_nodes,
            time_budget=args.time_budget,
            split_depth=args.split_depth,
            checkpoint_path=args.checkpoint,
            jobs=args.jobs,
            orderly=args.orderly,
        )
    except (ValueError, OverflowError) as exc:
        print(f"search: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        outcome = search(params)
    except CheckpointError as exc:
        print(f"search: {exc}", file=sys.stderr)
        return EXIT_PARSE
    bad = [i for i, g in enumerate(outcome.results) if not verify_result(g, params)]
    if bad:
        raise RuntimeError(f"search produced results failing verification: {bad}")
    summary = outcome.summary()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, g in enumerate(outcome.results):
            (out / f"result_{i:04d}.txt").write_text(emit_digraph(g), encoding="utf-8")
        (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n", encoding="utf-8")
    for key in ("d", "k", "epsilon", "order", "require_diregular", "complete",
                "result_count", "nodes_explored", "tasks", "duration_seconds"):
        value = summary[key]
        print(f"{key}={str(value).lower() if isinstance(value, bool) else value}")
    return EXIT_OK if outcome.complete else EXIT_INCOMPLETE


def _cmd_cages(args: argparse.Namespace) -> int:
    left, right = embedded_cages()
    chosen = {"left": [left], "right": [right], "both": [left, right]}[args.emit]
    sys.stdout.write("\n".join(emit_digraph(g) for g in chosen))
    return EXIT_OK


def _cmd_export(args: argparse.Namespace) -> int:
    g = _load(args.file)
    if g is None:
        return EXIT_PARSE
    _write(args.output, export_dot(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgeodetic", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, func, help_ in (
        ("check", _cmd_check, "classify a digraph against the Moore bound"),
        ("audit", _cmd_audit, "run the structural audits on a digraph"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="digraph text file, '-' for stdin")
        p.add_argument("-d", type=int, required=True)
        p.add_argument("-k", type=int, required=True)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)

    p = sub.add_parser("search", help="exhaustive search for (d,k,+e)-digraphs")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-e", type=int, required=True, help="excess")
    p.add_argument("--diregular", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--split-depth", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    p.add_argument("--checkpoint", default=None, metavar="PATH")
    p.add_argument("--orderly", action="store_true", help="keep only canonically labelled leaves")
    p.add_argument("--out", default=None, metavar="DIR")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("cages", help="print the two (2,2)-geodetic cages")
    p.add_argument("--emit", choices=("left", "right", "both"), default="both")
    p.set_defaults(func=_cmd_cages)

    p = sub.add_parser("export", help="convert a digraph file")
    p.add_argument("file")
    p.add_argument("--format", choices=("dot",), required=True)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"{exc.filename}: no such file", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OverflowError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
