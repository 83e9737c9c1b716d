import io
import json
import subprocess
import sys

import pytest

from bitminer import cli


def run(*argv):
    out, err = io.BytesIO(), io.BytesIO()
    code = cli.run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_mine_five_db(five_db_file):
    code, out, err = run("mine", five_db_file, "--min-support", "abs:2")
    assert code == 0
    assert out == b"itemset,support_count,support\na,4,0.800000\nb,4,0.800000\nc,2,0.400000\na;b,3,0.600000\na;c,2,0.400000\n"
    header, row = err.decode().splitlines()
    summary = dict(zip(header.split(","), row.split(",")))
    assert summary["frequent_count"] == "5"
    assert summary["n_used"] == "5"


def test_mine_json_and_summary_file(five_db_file, tmp_path):
    target = tmp_path / "summary.json"
    code, out, err = run("mine", five_db_file, "--min-support", "40%", "--format", "json", "--summary-out", target)
    assert code == 0 and err == b""
    records = [json.loads(line) for line in out.splitlines()]
    assert records[3] == {"items": ["a", "b"], "support_count": 3, "support": "0.600000"}
    assert json.loads(target.read_text())["frequent_count"] == 5


def test_rules(five_db_file):
    code, out, _ = run("rules", five_db_file, "--min-support", "abs:2", "--min-confidence", "0.5")
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0] == "antecedent,consequent,support_count,confidence,lift"
    assert "a,b,3,0.750000,0.937500" in lines
    assert "c,a,2,1.000000,1.250000" in lines


@pytest.mark.parametrize(
    "flags",
    [
        ["--min-support", "101%"],
        ["--min-support", "abs:-3"],
        ["--min-support", "x"],
        ["--min-support", "1%", "--max-len", "0"],
        ["--min-support", "1%", "--partitions", "0"],
        ["--min-support", "1%", "--compare", "lt"],
        ["--min-support", "1%", "--min-confidence", "0.5"],
        [],
    ],
)
def test_bad_flags_exit_2(five_db_file, flags):
    code, out, _ = run("mine", five_db_file, *flags)
    assert code == 2 and out == b""


def test_bad_min_confidence(five_db_file):
    assert run("rules", five_db_file, "--min-support", "1%", "--min-confidence", "abc")[0] == 2


def test_missing_file_exit_1(tmp_path):
    code, _, err = run("mine", tmp_path / "absent.csv", "--min-support", "1%")
    assert code == 1 and b"absent.csv" in err


def test_bad_utf8_exit_1(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_bytes(b"a,\xc3\n")
    code, _, err = run("mine", path, "--min-support", "1%")
    assert code == 1 and b"offset 2" in err


def test_invariant_violation_exit_3(five_db_file, monkeypatch):
    from bitminer.miner import FrequentItemset

    monkeypatch.setattr(cli, "_mine", lambda *a: [FrequentItemset((0, 1), 3, 5)])
    code, _, err = run("mine", five_db_file, "--min-support", "abs:2")
    assert code == 3 and b"invariant" in err


def test_limit_transactions(five_db_file):
    code, out, err = run("mine", five_db_file, "--min-support", "abs:1", "--limit-transactions", "2")
    assert code == 0
    assert out.decode().splitlines()[1:] == ["a,2,1.000000", "b,1,0.500000", "c,1,0.500000", "a;b,1,0.500000", "a;c,1,0.500000"]
    assert err.decode().splitlines()[1].startswith("2,")


@pytest.mark.parametrize("extra", [["--partitions", "2"], ["--partitions", "5"], ["--repr", "sparse"], ["--jobs", "2"],
                                   ["--order", "ascending-support"]])
def test_output_independent_of_strategy(five_db_file, extra):
    base = run("mine", five_db_file, "--min-support", "abs:1")[1]
    assert run("mine", five_db_file, "--min-support", "abs:1", *extra)[1] == base


def test_bench_single_row(five_db_file):
    code, out, _ = run("bench", five_db_file, "--limits", "5", "--thresholds", "40%", "--repeat", "1")
    assert code == 0
    header, row = out.decode().splitlines()
    assert header == "support_threshold,transactions,median_seconds,frequent_itemsets,avg_support,memory_bytes"
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["frequent_itemsets"] == "5"
    assert fields["support_threshold"] == "0.400000"
    assert fields["avg_support"] == "0.600000"


def test_bench_median_of_one_is_the_run(five_db_file, monkeypatch):
    ticks = iter([0.0, 2.5])
    monkeypatch.setattr(cli.time, "perf_counter", lambda: next(ticks))
    _, out, _ = run("bench", five_db_file, "--limits", "5", "--thresholds", "40%", "--repeat", "1")
    assert out.decode().splitlines()[1].split(",")[2] == "2.500000"


def test_bench_synthetic_grid_is_monotone():
    code, out, _ = run("bench", "--synthetic-rows", "400", "--synthetic-items", "12", "--synthetic-density", "1/4",
                       "--thresholds", "2%,5%,10%", "--limits", "200,400", "--repeat", "1", "--seed", "5")
    assert code == 0
    rows = [line.split(",") for line in out.decode().splitlines()[1:]]
    assert len(rows) == 6
    for limit in ("200", "400"):
        counts = [int(r[3]) for r in rows if r[1] == limit]
        assert counts == sorted(counts, reverse=True)


def test_bench_bad_limits(five_db_file):
    assert run("bench", five_db_file, "--limits", "a,b")[0] == 2
    assert run("bench", five_db_file, "--thresholds", "200%")[0] == 2


def test_module_entry_point(five_db_file):
    proc = subprocess.run(
        [sys.executable, "-m", "bitminer", "mine", str(five_db_file), "--min-support", "abs:2"],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.count(b"\n") == 6
