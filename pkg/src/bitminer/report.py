"""CSV and JSON rendering of mining results.

Rationals become fixed six-decimal strings here and nowhere else. Output
is a pure function of its input, so equal results give equal bytes.

JSON output is one object per line with these keys, in this order:

* itemset: ``items`` (names), ``support_count``, ``support``
* rule: ``antecedent``, ``consequent``, ``support_count``, ``confidence``, ``lift``
* summary: ``n_used``, ``threshold``, ``comparison``, ``frequent_count``,
  ``avg_support`` (``null`` when nothing is frequent), ``elapsed_seconds``,
  ``memory_bytes``
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .ingest import ItemCatalog
from .miner import AssociationRule, FrequentItemset, RunSummary

CSV = "csv"
JSON = "json"
FORMATS = (CSV, JSON)

ITEMSET_HEADER = ("itemset", "support_count", "support")
RULE_HEADER = ("antecedent", "consequent", "support_count", "confidence", "lift")
SUMMARY_HEADER = (
    "n_used",
    "threshold",
    "comparison",
    "frequent_count",
    "avg_support",
    "elapsed_seconds",
    "memory_bytes",
)
BENCH_HEADER = (
    "support_threshold",
    "transactions",
    "median_seconds",
    "frequent_itemsets",
    "avg_support",
    "memory_bytes",
)


def format_decimal(value, digits: int = 6) -> str:
    """Render a rational with ``digits`` decimals, rounding half to even."""
    q = Fraction(value)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scale = 10**digits
    whole, rem = divmod(q.numerator * scale, q.denominator)
    twice = 2 * rem
    if twice > q.denominator or (twice == q.denominator and whole % 2):
        whole += 1
    if not whole:
        sign = ""
    int_part, frac_part = divmod(whole, scale)
    return f"{sign}{int_part}.{frac_part:0{digits}d}" if digits else f"{sign}{int_part}"


def _opt_decimal(value: Optional[Fraction]) -> str:
    return "" if value is None else format_decimal(value)


def _names(catalog: ItemCatalog, items: Sequence[int]) -> list[str]:
    return [catalog.names[i] for i in items]


def _write_csv(header, rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def _write_jsonl(objects) -> bytes:
    return "".join(json.dumps(obj, ensure_ascii=False) + "\n" for obj in objects).encode("utf-8")


def itemset_record(fi: FrequentItemset, catalog: ItemCatalog) -> dict:
    return {
        "items": _names(catalog, fi.items),
        "support_count": fi.support_count,
        "support": format_decimal(Fraction(fi.support_count, fi.n)),
    }


def rule_record(rule: AssociationRule, catalog: ItemCatalog) -> dict:
    return {
        "antecedent": _names(catalog, rule.antecedent),
        "consequent": _names(catalog, rule.consequent),
        "support_count": rule.support_count,
        "confidence": format_decimal(rule.confidence),
        "lift": format_decimal(rule.lift),
    }


def summary_record(summary: RunSummary) -> dict:
    return {
        "n_used": summary.n_used,
        "threshold": str(summary.threshold),
        "comparison": summary.comparison,
        "frequent_count": summary.frequent_count,
        "avg_support": None if summary.avg_relative_support is None else format_decimal(summary.avg_relative_support),
        "elapsed_seconds": format_decimal(Fraction(summary.elapsed)),
        "memory_bytes": summary.memory_estimate,
    }


def emit_itemsets(itemsets: Iterable[FrequentItemset], catalog: ItemCatalog, fmt: str = CSV) -> bytes:
    records = [itemset_record(fi, catalog) for fi in itemsets]
    if fmt == JSON:
        return _write_jsonl(records)
    return _write_csv(ITEMSET_HEADER, ([";".join(r["items"]), r["support_count"], r["support"]] for r in records))


def emit_rules(rules: Iterable[AssociationRule], catalog: ItemCatalog, fmt: str = CSV) -> bytes:
    records = [rule_record(rule, catalog) for rule in rules]
    if fmt == JSON:
        return _write_jsonl(records)
    return _write_csv(
        RULE_HEADER,
        (
            [";".join(r["antecedent"]), ";".join(r["consequent"]), r["support_count"], r["confidence"], r["lift"]]
            for r in records
        ),
    )


def emit_summary(summary: RunSummary, fmt: str = CSV) -> bytes:
    record = summary_record(summary)
    if fmt == JSON:
        return _write_jsonl([record])
    row = ["" if v is None else v for v in record.values()]
    return _write_csv(SUMMARY_HEADER, [row])


def emit_bench(rows: Iterable[dict], fmt: str = CSV) -> bytes:
    rows = list(rows)
    if fmt == JSON:
        return _write_jsonl(rows)
    return _write_csv(BENCH_HEADER, ([row[k] if row[k] is not None else "" for k in BENCH_HEADER] for row in rows))


def emit(records, fmt: str = CSV, catalog: Optional[ItemCatalog] = None) -> bytes:
    """Render a homogeneous list of itemsets or rules, or one summary."""
    if isinstance(records, RunSummary):
        return emit_summary(records, fmt)
    records = list(records)
    if records and isinstance(records[0], AssociationRule):
        return emit_rules(records, catalog, fmt)
    return emit_itemsets(records, catalog, fmt)
