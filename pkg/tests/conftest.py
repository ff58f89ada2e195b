from __future__ import annotations

import pytest

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    number = int(name.split("_")[2])
    title = name.split("_", 3)[3].replace("_", " ")
    if report.when == "call" or report.outcome != "passed":
        previous = _ACCEPTANCE.get(number, (None, "PASS"))[1]
        outcome = "PASS" if report.outcome == "passed" and previous == "PASS" else "FAIL"
        _ACCEPTANCE[number] = (title, outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, outcome = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {outcome}  {title}")


@pytest.fixture(scope="session")
def words_upto_8():
    from specgraph.census import exhaustive_graph6
    return list(exhaustive_graph6(8))


@pytest.fixture(scope="session")
def words_upto_9():
    from specgraph.census import exhaustive_graph6
    return list(exhaustive_graph6(9))
