"""Command-line driver.

Usage: ``qpverify <suite> --algebra <spec> [--degree N] [--format text|json]
[--seed N] [--timings]`` or ``qpverify --list``.  Exit codes: 0 every
check passed, 1 a check failed, 2 usage error, 3 resource cap exceeded.
"""

import argparse
import sys

from . import polyfield, suites


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qpverify",
        description=(
            "exact verification suites for Yang-Baxter, Schouten and "
            "Poisson-pencil identities on semisimple Lie algebras"
        ),
    )
    parser.add_argument("suite", nargs="?", help="suite name; see --list")
    parser.add_argument(
        "--algebra",
        default="A1",
        help="algebra spec: letter+rank like A2, B2, D4, G2, or sl3/so5/sp4/so8",
    )
    parser.add_argument("--degree", type=int, default=None, help="truncation degree override")
    parser.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
    parser.add_argument(
        "--timings",
        action="store_true",
        help="embed wall-clock millis in JSON output (breaks byte stability)",
    )
    parser.add_argument("--list", action="store_true", help="list available suites")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list:
        for entry in suites.list_suites():
            print(f"{entry['name']:22s} {entry['description']}")
        return 0
    if not args.suite:
        parser.print_usage(sys.stderr)
        print("qpverify: error: a suite name (or --list) is required", file=sys.stderr)
        return 2
    config = suites.SuiteConfig(
        algebra=args.algebra,
        suite=args.suite,
        degree=args.degree,
        seed=args.seed,
        fmt=args.fmt,
        timings=args.timings,
    )
    try:
        report = suites.run_suite(config)
    except suites.UsageError as exc:
        print(f"qpverify: error: {exc}", file=sys.stderr)
        return 2
    except polyfield.ResourceLimitError as exc:
        print(f"qpverify: resource cap: {exc}", file=sys.stderr)
        return 3
    if args.fmt == "json":
        print(report.to_json(timings=args.timings))
    else:
        print(report.to_text())
    return 0 if report.aggregate == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
