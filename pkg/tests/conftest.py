import os
from pathlib import Path

import pytest

from bitminer.ingest import TransactionDatabase

ROOT = Path(__file__).resolve().parent.parent

_acceptance_results: dict = {}


def groceries_path():
    """Location of the public Groceries basket file, if one is available."""
    candidates = [os.environ.get("BITMINER_GROCERIES")]
    candidates += [ROOT / "data" / "groceries.csv", Path(__file__).parent / "data" / "groceries.csv"]
    for c in candidates:
        if c and Path(c).is_file():
            return Path(c)
    return None


@pytest.fixture
def five_db():
    """T1={a,b}, T2={a,c}, T3={a,b,c}, T4={b}, T5={a,b,d}; ids a=0 .. d=3."""
    return TransactionDatabase.from_item_lists([["a", "b"], ["a", "c"], ["a", "b", "c"], ["b"], ["a", "b", "d"]])


@pytest.fixture
def five_db_file(tmp_path):
    path = tmp_path / "five.csv"
    path.write_bytes(b"a,b\na,c\na,b,c\nb\na,b,d\n")
    return path


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    crit = marker.kwargs["criterion"]
    prev = _acceptance_results.get(crit, (True, marker.kwargs.get("title", "")))
    _acceptance_results[crit] = (prev[0] and rep.passed, prev[1])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_acceptance_results):
        ok, title = _acceptance_results[crit]
        terminalreporter.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'}  {title}")
