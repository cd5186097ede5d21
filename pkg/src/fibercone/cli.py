"""Command-line entry point: ``fibercone run`` and ``fibercone corpus``."""
from __future__ import annotations

import argparse
import sys

from . import corpus
from .errors import ConsistencyViolation, FiberConeError
from .report import Config, TaskFailure, run_report
from .scenario import parse_scenario

CORPUS_SEED = 1


def _add_common(p: argparse.ArgumentParser, seed_default):
    p.add_argument("--seed", type=int, default=seed_default,
                   help="randomness seed for element sampling")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--prime", type=int, default=32003, help="prime field characteristic")
    grp.add_argument("--rationals", action="store_true", help="compute over the rationals")
    p.add_argument("--nmax", type=int, default=40, help="largest filtration index scanned")
    p.add_argument("--attempts", type=int, default=32, help="candidates per sequence step")
    p.add_argument("--tmax", type=int, default=8, help="largest T0 for the rescaling scan")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads for window scans (output is unaffected)")


def _config(args) -> Config:
    return Config(prime=args.prime, rationals=args.rationals, seed=args.seed,
                  n_max=args.nmax, attempts=args.attempts, t_max=args.tmax,
                  format=args.format, jobs=args.jobs)


def _run_one(text: str, name: str, config: Config, out) -> int:
    try:
        report = run_report(parse_scenario(text), config, name)
    except TaskFailure as exc:
        print(f"error: {name}: {exc}", file=sys.stderr)
        return 3 if isinstance(exc.cause, ConsistencyViolation) else 2
    except FiberConeError as exc:
        print(f"error: {name}: {exc}", file=sys.stderr)
        return 2
    out.write(report.render(config.format))
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibercone",
        description="Fiber cones of good filtrations: invariants, reductions and "
                    "Cohen-Macaulay checks.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run the tasks of a scenario file")
    run.add_argument("file", help="scenario file, or - for standard input")
    _add_common(run, None)
    cor = sub.add_parser("corpus", help="run the built-in scenarios")
    cor.add_argument("--filter", default="", help="only scenarios whose name contains this")
    cor.add_argument("--list", action="store_true", help="list scenario names and exit")
    _add_common(cor, CORPUS_SEED)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = _config(args)
    out = sys.stdout
    if args.command == "run":
        if args.file == "-":
            text, name = sys.stdin.read(), "<stdin>"
        else:
            try:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return 2
            name = args.file
        return _run_one(text, name, config, out)
    names = [n for n in corpus.names() if args.filter in n]
    if args.list:
        out.write("".join(n + "\n" for n in names))
        return 0
    if not names:
        print(f"error: no corpus scenario matches {args.filter!r}", file=sys.stderr)
        return 2
    worst = 0
    for n in names:
        code = _run_one(corpus.text(n), n, config, out)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
