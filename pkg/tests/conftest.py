import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criteria: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    name = item.name
    if not name.startswith("test_criterion_"):
        return
    num = str(int(name.split("_")[2]))
    doc = (item.function.__doc__ or name).strip().splitlines()[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        _criteria[num] = ("PASS" if rep.passed else "FAIL", doc)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria, key=int):
        status, doc = _criteria[num]
        terminalreporter.write_line(f"criterion {num} {status}: {doc}")
