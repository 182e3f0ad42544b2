"""Command line front end.

    mmx eval "<command>"
    mmx check --suite <name> --cases N --seed S [--max-prime P --max-exp E
                                                 --max-blocks B] [--jobs N]
    mmx oracle-diff --cases N --seed S

Exit codes: 0 success, 1 usage or parse error, 2 property violation.  The
default seed comes from the MMX_SEED environment variable when set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import UnknownSuite
from .exprlang import eval_text
from .oracle import InstanceConfig
from .suites import DEFAULT_CONFIG, SUITE_NAMES, run_suite


def _default_seed() -> int:
    raw = os.environ.get("MMX_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mmx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one module-expression command")
    p_eval.add_argument("text", help="command text, e.g. 'hom Pr(2) Pr(2)'")

    p_check = sub.add_parser("check", help="run a property suite")
    p_check.add_argument("--suite", required=True)
    p_check.add_argument("--cases", type=int, default=1000)
    p_check.add_argument("--seed", type=int, default=None)
    p_check.add_argument("--max-prime", type=int, default=DEFAULT_CONFIG.max_prime)
    p_check.add_argument("--max-exp", type=int, default=DEFAULT_CONFIG.max_exp)
    p_check.add_argument("--max-blocks", type=int, default=DEFAULT_CONFIG.max_blocks)
    p_check.add_argument("--jobs", type=int, default=1)

    p_diff = sub.add_parser("oracle-diff", help="random engine-vs-oracle comparison")
    p_diff.add_argument("--cases", type=int, default=500)
    p_diff.add_argument("--seed", type=int, default=None)
    p_diff.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0

    if args.command == "eval":
        result = eval_text(args.text)
        print(json.dumps(result, sort_keys=True))
        return 0 if result.get("ok") else 1

    seed = args.seed if args.seed is not None else _default_seed()
    if args.command == "oracle-diff":
        suite, config = "oracle_diff", DEFAULT_CONFIG
    else:
        suite = args.suite
        config = InstanceConfig(
            max_prime=args.max_prime,
            max_exp=args.max_exp,
            max_blocks=args.max_blocks,
        )
    if args.cases < 0:
        print("cases must be non-negative", file=sys.stderr)
        return 1
    try:
        report = run_suite(suite, args.cases, seed, config, jobs=max(1, args.jobs))
    except UnknownSuite as exc:
        print(f"{exc}; known suites: {', '.join(SUITE_NAMES)}", file=sys.stderr)
        return 1
    print(report.render())
    return 0 if report.ok else 2


if __name__ == "__main__":
    raise SystemExit(main())
