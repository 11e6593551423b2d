import os

import pytest


def expensive_enabled():
    return os.environ.get("WGCALC_EXPENSIVE", "").strip().lower() in ("1", "true", "yes", "on")


def pytest_collection_modifyitems(config, items):
    if expensive_enabled():
        return
    skip = pytest.mark.skip(reason="long-running; set WGCALC_EXPENSIVE=1")
    for item in items:
        if "expensive" in item.keywords:
            item.add_marker(skip)


_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion; printed again in the terminal summary."""
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _CRITERIA[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[number])
