"""Command-line front end.

Two subcommands:

    femlab run <scenario.json> [--out DIR] [--tolerance FLOAT]
    femlab suite <name> --seed N [--count N] [--out DIR]

`run` executes a scenario file and writes its artifacts; `suite` streams
one JSON line per check to stdout followed by a summary line.  The
environment variable FEM_LAB_OUT overrides --out for both.  Exit codes:
0 on success, 1 when an assertion block or suite check fails, 2 on
malformed input (parse or validation errors, unknown suite).
"""

from __future__ import annotations

import argparse
import os
import sys

from .errors import AssertionFailed, ParseError, UnknownSuite, ValidationError
from .scenario import DEFAULT_TOLERANCE, run_scenario
from .serialize import dumps_canonical, load_json, write_jsonl
from .suites import run_suite

DEFAULT_SUITE_COUNT = 50


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="femlab",
        description="exact piecewise-linear potential geometry experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_cmd = sub.add_parser("run", help="execute a JSON scenario file")
    run_cmd.add_argument("scenario", help="path to the scenario JSON document")
    run_cmd.add_argument("--out", default=".", help="output directory (default: .)")
    run_cmd.add_argument(
        "--tolerance",
        type=float,
        default=DEFAULT_TOLERANCE,
        help="float tolerance for entropy and convergence thresholds only; "
        "rational assertions are exact and ignore it",
    )

    suite_cmd = sub.add_parser("suite", help="run one seeded property suite")
    suite_cmd.add_argument("name", help="suite name")
    suite_cmd.add_argument("--seed", type=int, required=True, help="RNG seed")
    suite_cmd.add_argument(
        "--count", type=int, default=DEFAULT_SUITE_COUNT, help="number of trials"
    )
    suite_cmd.add_argument(
        "--out", default=None, help="also write the JSON lines to <out>/suite_<name>.jsonl"
    )
    return parser


def _out_dir(cli_value):
    return os.environ.get("FEM_LAB_OUT") or cli_value


def _cmd_run(args) -> int:
    try:
        doc = load_json(args.scenario)
        run_scenario(doc, _out_dir(args.out), args.tolerance)
    except AssertionFailed as exc:
        payload = {"error": "AssertionFailed", "message": str(exc)}
        payload["witnesses"] = getattr(exc, "witnesses", [])
        print(dumps_canonical(payload), file=sys.stderr)
        return 1
    except (ParseError, ValidationError) as exc:
        print(
            dumps_canonical({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 2
    return 0


def _cmd_suite(args) -> int:
    try:
        records, summary = run_suite(args.name, args.seed, args.count)
    except UnknownSuite as exc:
        print(
            dumps_canonical({"error": "UnknownSuite", "message": str(exc)}),
            file=sys.stderr,
        )
        return 2
    rows = records + [summary]
    for row in rows:
        print(dumps_canonical(row))
    out = _out_dir(args.out)
    if out:
        os.makedirs(out, exist_ok=True)
        write_jsonl(os.path.join(out, "suite_%s.jsonl" % args.name), rows)
    return 0 if summary["failures"] == 0 else 1


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    return _cmd_suite(args)


if __name__ == "__main__":
    sys.exit(main())
