"""
The `sortc-meta` command line: run the metatheory suite and write its report.
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from DSRCheck.benchmark.metatheory import CORPUS_DIR, PROPERTIES, SuiteConfig, run_metatheory_suite
from DSRCheck.utility import dump_json

LOGGER = logging.getLogger(__name__)


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="sortc-meta", description="Metatheory property suite")
    parser.add_argument("--trials", type=int, default=500, help="Trials per property.")
    parser.add_argument(
        "--max-discard-ratio", type=int, default=10,
        help="Discarded trials allowed per requested trial before a property gives up.",
    )
    parser.add_argument("--seed", type=int, default=0, help="Suite seed.")
    parser.add_argument(
        "--only", type=str, action="append", default=None, choices=sorted(PROPERTIES),
        help="Run only this property (repeatable).",
    )
    parser.add_argument("--term-size", type=int, default=9, help="Bound on generated term size.")
    parser.add_argument("--value-size", type=int, default=6, help="Bound on enumerated value size.")
    parser.add_argument("--type-depth", type=int, default=3, help="Bound on generated type depth.")
    parser.add_argument("--oracle-depth", type=int, default=12, help="Proof search depth of the declarative oracle.")
    parser.add_argument("--fuel", type=int, default=200, help="Evaluation fuel per term.")
    parser.add_argument("--timeout", type=float, default=5.0, help="Seconds allowed per check in the decidability suite.")
    parser.add_argument("--corpus", type=str, default=CORPUS_DIR, help="Directory of .dsr programs.")
    parser.add_argument("--corrupt-subtyping", action="store_true", help="Mutation smoke test: covariant arrow domains.")
    parser.add_argument("--output", type=str, default="metatheory.json", help="Report file, .json or .csv.")
    parser.add_argument("--quiet", action="store_true", help="No progress bar.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    args = parser.parse_args(argv)
    if args.trials < 1:
        parser.error("--trials must be positive")
    if args.max_discard_ratio < 0:
        parser.error("--max-discard-ratio must not be negative")
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    config = SuiteConfig(
        trials=args.trials,
        max_discard_ratio=args.max_discard_ratio,
        seed=args.seed,
        term_size=args.term_size,
        value_size=args.value_size,
        type_depth=args.type_depth,
        oracle_depth=args.oracle_depth,
        fuel=args.fuel,
        timeout=args.timeout,
        only=args.only,
        corrupt_subtyping=args.corrupt_subtyping,
        corpus_dir=args.corpus,
        progress=not args.quiet,
    )
    report = run_metatheory_suite(config)
    print(report[["property", "requested", "trials", "failures", "discarded", "seconds"]].to_string(index=False))

    if args.output.endswith(".csv"):
        report.to_csv(args.output, index=False)
    else:
        dump_json(args.output, {"config": vars(args), "properties": report.to_dict(orient="records")})
    LOGGER.info("report written to %s", args.output)

    failed = report[report.failures > 0]
    for _, row in failed.iterrows():
        print(f"FAIL {row.property}: {row.counterexample}", file=sys.stderr)
    starved = report[report.gave_up & (report.failures == 0)]
    for _, row in starved.iterrows():
        print(f"GAVE UP {row.property}: {row.trials} of {row.requested} trials decided", file=sys.stderr)
    return 1 if len(failed) or len(starved) else 0


if __name__ == "__main__":
    sys.exit(main())
