import json
from fractions import Fraction

import pytest

from bitminer import report
from bitminer.bitmatrix import build_matrix
from bitminer.miner import FrequentItemset, MiningConfig, Threshold, generate_rules, mine_frequent, summarize_run


@pytest.mark.parametrize(
    "value, text",
    [
        (Fraction(3, 5), "0.600000"),
        (Fraction(3, 4), "0.750000"),
        (Fraction(15, 16), "0.937500"),
        (Fraction(1), "1.000000"),
        (Fraction(0), "0.000000"),
        (Fraction(2, 3), "0.666667"),
        (Fraction(1, 3), "0.333333"),
        # ties go to the even neighbour
        (Fraction(5, 10**7), "0.000000"),
        (Fraction(15, 10**7), "0.000002"),
        (Fraction(25, 10**7), "0.000002"),
        (Fraction(1234565, 10**7), "0.123456"),
        (Fraction(1234575, 10**7), "0.123458"),
        (Fraction(-1, 4), "-0.250000"),
        (Fraction(-5, 10**7), "0.000000"),
        (Fraction(125, 100), "1.250000"),
    ],
)
def test_format_decimal(value, text):
    assert report.format_decimal(value) == text


def test_itemset_csv_row(five_db):
    out = report.emit_itemsets([FrequentItemset((0, 1), 3, 5)], five_db.catalog)
    assert out == b"itemset,support_count,support\na;b,3,0.600000\n"


def test_empty_csv_is_header_only(five_db):
    assert report.emit_itemsets([], five_db.catalog) == b"itemset,support_count,support\n"
    assert report.emit_rules([], five_db.catalog) == b"antecedent,consequent,support_count,confidence,lift\n"


def test_rule_json(five_db):
    frequent = mine_frequent(build_matrix(five_db), MiningConfig(Threshold.absolute(2)))
    rules = generate_rules(frequent, Fraction(1, 2))
    lines = report.emit_rules(rules, five_db.catalog, report.JSON).decode().splitlines()
    first = json.loads(lines[0])
    assert list(first) == ["antecedent", "consequent", "support_count", "confidence", "lift"]
    assert first == {"antecedent": ["a"], "consequent": ["b"], "support_count": 3, "confidence": "0.750000", "lift": "0.937500"}


def test_emit_dispatch(five_db):
    fi = [FrequentItemset((0,), 4, 5)]
    assert report.emit(fi, report.CSV, five_db.catalog) == report.emit_itemsets(fi, five_db.catalog)
    mat = build_matrix(five_db)
    config = MiningConfig(Threshold.absolute(2))
    summary = summarize_run(fi, 0.25, mat, config)
    assert report.emit(summary, report.JSON) == report.emit_summary(summary, report.JSON)


def test_summary_formats(five_db):
    mat = build_matrix(five_db)
    config = MiningConfig(Threshold.parse("40%"))
    summary = summarize_run(mine_frequent(mat, config), 0.125, mat, config)
    csv_text = report.emit_summary(summary).decode()
    assert csv_text == (
        "n_used,threshold,comparison,frequent_count,avg_support,elapsed_seconds,memory_bytes\n"
        "5,2/5,geq,5,0.600000,0.125000,32\n"
    )
    obj = json.loads(report.emit_summary(summary, report.JSON))
    assert obj["frequent_count"] == 5 and obj["avg_support"] == "0.600000"
    empty = summarize_run([], 0.0, mat, config)
    assert json.loads(report.emit_summary(empty, report.JSON))["avg_support"] is None
    assert report.emit_summary(empty).decode().splitlines()[1] == "5,2/5,geq,0,,0.000000,32"


def test_bench_header():
    assert report.emit_bench([]) == b"support_threshold,transactions,median_seconds,frequent_itemsets,avg_support,memory_bytes\n"


def test_names_with_csv_specials_are_quoted():
    from bitminer.ingest import ItemCatalog

    cat = ItemCatalog(('say "hi"', "b"))
    out = report.emit_itemsets([FrequentItemset((0, 1), 1, 2)], cat)
    assert out.splitlines()[1] == b'"say ""hi"";b",1,0.500000'
