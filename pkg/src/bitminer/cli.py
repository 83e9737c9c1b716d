"""Command-line interface.

    bitminer mine  FILE --min-support 1% [--partitions K] [--format csv|json]
    bitminer rules FILE --min-support 1% --min-confidence 0.5
    bitminer bench [FILE] [--thresholds 1%,2%] [--limits 2000,4000] [--repeat 3]

Results go to stdout. The run summary of ``mine``/``rules`` goes to stderr
(or ``--summary-out``) because it carries wall-clock timings; stdout stays
byte-identical between runs.

Exit codes: 0 success, 1 I/O or parse failure, 2 invalid flags,
3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import logging
import statistics
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import report
from .bitmatrix import DENSE, REPRESENTATIONS, build_matrix
from .errors import BitminerError, ConfigError, IngestError
from .ingest import TransactionDatabase, read_baskets, truncate_db
from .miner import (
    COMPARISONS,
    GEQ,
    ORDER_ID,
    ORDERS,
    MiningConfig,
    Threshold,
    generate_rules,
    mine_frequent,
    resolve_threshold,
    summarize_run,
)
from .oracle import GeneratorSpec, random_db
from .partition import mine_partitioned

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_INVARIANT = 3

DEFAULT_SWEEP_THRESHOLDS = "1%,2%,3%,4%,5%"
DEFAULT_SWEEP_LIMITS = "2000,4000,6000,8000,10000"

log = logging.getLogger("bitminer")


class InvariantViolation(BitminerError):
    pass


class UsageError(BitminerError):
    pass


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _add_mining_flags(p: argparse.ArgumentParser, with_threshold: bool = True) -> None:
    if with_threshold:
        p.add_argument("--min-support", required=True, help='e.g. "1%%", "0.01", "1/100" or "abs:50"')
    p.add_argument("--compare", choices=COMPARISONS, default=GEQ)
    p.add_argument("--max-len", type=_positive_int)
    p.add_argument("--repr", choices=REPRESENTATIONS, default=DENSE)
    p.add_argument("--order", choices=ORDERS, default=ORDER_ID)
    p.add_argument("--partitions", type=_positive_int, default=1)
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--limit-transactions", type=_non_negative_int)
    p.add_argument("--format", choices=report.FORMATS, default=report.CSV)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bitminer", description="Frequent itemset mining on packed bit columns.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="emit frequent itemsets")
    p.add_argument("input")
    _add_mining_flags(p)
    p.add_argument("--summary-out", help="write the run summary here instead of stderr")

    p = sub.add_parser("rules", help="emit association rules")
    p.add_argument("input")
    _add_mining_flags(p)
    p.add_argument("--min-confidence", default="0", help='e.g. "0.5", "50%%" or "1/2"')
    p.add_argument("--summary-out")

    p = sub.add_parser("bench", help="run a threshold x transaction-count sweep")
    p.add_argument("input", nargs="?", help="basket file; omit to use a seeded synthetic database")
    _add_mining_flags(p, with_threshold=False)
    p.add_argument("--thresholds", default=DEFAULT_SWEEP_THRESHOLDS)
    p.add_argument("--limits", default=DEFAULT_SWEEP_LIMITS)
    p.add_argument("--repeat", type=_positive_int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--synthetic-rows", type=_non_negative_int, default=9835)
    p.add_argument("--synthetic-items", type=_non_negative_int, default=169)
    p.add_argument("--synthetic-density", default="1/40")
    return parser


def _parse_fraction(text: str, what: str) -> Fraction:
    s = text.strip()
    try:
        value = Fraction(s[:-1]) / 100 if s.endswith("%") else Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse {what} {text!r}")
    return value


def _mining_config(args, threshold: Threshold) -> MiningConfig:
    return MiningConfig(
        threshold=threshold,
        comparison=args.compare,
        max_len=args.max_len,
        representation=args.repr,
        order=args.order,
    )


def _load(args) -> TransactionDatabase:
    db = read_baskets(args.input)
    if args.limit_transactions is not None:
        db = truncate_db(db, args.limit_transactions)
    return db


def _mine(matrix, config: MiningConfig, partitions: int, jobs: int):
    if partitions > 1:
        return mine_partitioned(matrix, config, partitions, jobs=jobs)
    return mine_frequent(matrix, config, jobs=jobs)


def check_result(frequent, matrix, config: MiningConfig) -> None:
    """Cheap structural checks on a mining result; raises InvariantViolation."""
    passes = resolve_threshold(config, matrix.n)
    seen = set()
    prev = None
    for fi in frequent:
        key = (len(fi.items), fi.items)
        if prev is not None and key <= prev:
            raise InvariantViolation(f"output not in canonical order at {fi.items}")
        prev = key
        if not passes(fi.support_count) or fi.support_count > matrix.n:
            raise InvariantViolation(f"itemset {fi.items} has inadmissible support {fi.support_count}")
        if len(fi.items) > 1:
            for drop in range(len(fi.items)):
                if fi.items[:drop] + fi.items[drop + 1:] not in seen:
                    raise InvariantViolation(f"subset of {fi.items} missing from output")
        seen.add(fi.items)


def _run_once(db: TransactionDatabase, config: MiningConfig, partitions: int, jobs: int):
    start = time.perf_counter()
    matrix = build_matrix(db, config.representation)
    frequent = _mine(matrix, config, partitions, jobs)
    elapsed = time.perf_counter() - start
    return matrix, frequent, elapsed


def _write_summary(args, summary, stderr) -> None:
    data = report.emit_summary(summary, args.format)
    if args.summary_out:
        with open(args.summary_out, "wb") as fh:
            fh.write(data)
    else:
        stderr.write(data)


def run_mine(args, stdout, stderr) -> int:
    config = _mining_config(args, Threshold.parse(args.min_support))
    min_conf = None
    if args.command == "rules":
        min_conf = _parse_fraction(args.min_confidence, "--min-confidence")
        if min_conf < 0:
            raise UsageError("--min-confidence must be non-negative")
    db = _load(args)
    matrix, frequent, elapsed = _run_once(db, config, args.partitions, args.jobs)
    check_result(frequent, matrix, config)
    summary = summarize_run(frequent, elapsed, matrix, config)

    if min_conf is None:
        stdout.write(report.emit_itemsets(frequent, db.catalog, args.format))
    else:
        rules = generate_rules(frequent, min_conf)
        stdout.write(report.emit_rules(rules, db.catalog, args.format))
    _write_summary(args, summary, stderr)
    return EXIT_OK


def _split_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


def bench_rows(db: TransactionDatabase, thresholds, limits, args) -> list[dict]:
    """One row per (threshold, limit) pair: median time over ``args.repeat`` runs."""
    rows = []
    for limit in limits:
        sub = truncate_db(db, limit)
        for threshold in thresholds:
            config = _mining_config(args, threshold)
            times = []
            for _ in range(args.repeat):
                matrix, frequent, elapsed = _run_once(sub, config, args.partitions, args.jobs)
                times.append(elapsed)
            summary = summarize_run(frequent, statistics.median(times), matrix, config)
            rows.append(
                {
                    "support_threshold": report.format_decimal(threshold.value)
                    if threshold.relative
                    else str(threshold),
                    "transactions": summary.n_used,
                    "median_seconds": report.format_decimal(Fraction(summary.elapsed)),
                    "frequent_itemsets": summary.frequent_count,
                    "avg_support": None
                    if summary.avg_relative_support is None
                    else report.format_decimal(summary.avg_relative_support),
                    "memory_bytes": summary.memory_estimate,
                }
            )
    return rows


def run_bench(args, stdout, stderr) -> int:
    thresholds = [Threshold.parse(t) for t in _split_list(args.thresholds)]
    try:
        limits = [int(x) for x in _split_list(args.limits)]
    except ValueError:
        raise UsageError(f"--limits must be comma-separated integers, got {args.limits!r}")
    if not thresholds or not limits or any(x < 0 for x in limits):
        raise UsageError("--thresholds and --limits need at least one valid value each")
    if args.input is None:
        density = _parse_fraction(args.synthetic_density, "--synthetic-density")
        if not 0 <= density <= 1:
            raise UsageError("--synthetic-density must lie in [0, 1]")
        db = random_db(GeneratorSpec(args.synthetic_rows, args.synthetic_items, density, args.seed))
    else:
        db = _load(args)
    rows = bench_rows(db, thresholds, limits, args)
    stdout.write(report.emit_bench(rows, args.format))
    return EXIT_OK


def run(argv: Optional[Sequence[str]], stdout, stderr) -> int:
    """Entry point with explicit binary streams; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="bitminer: %(message)s")

    def fail(code, message):
        stderr.write(f"bitminer: {message}\n".encode("utf-8"))
        return code

    try:
        if args.command == "bench":
            return run_bench(args, stdout, stderr)
        return run_mine(args, stdout, stderr)
    except (ConfigError, UsageError) as exc:
        return fail(EXIT_USAGE, exc)
    except (OSError, IngestError) as exc:
        return fail(EXIT_IO, exc)
    except InvariantViolation as exc:
        return fail(EXIT_INVARIANT, f"internal invariant violated: {exc}")
    except BitminerError as exc:
        return fail(EXIT_INVARIANT, f"internal error: {exc}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv, sys.stdout.buffer, sys.stderr.buffer)


if __name__ == "__main__":
    sys.exit(main())
