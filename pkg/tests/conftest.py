import re

import pytest

from cactuskit.coxeter import preset

# presets of criterion 1
ORACLE_PRESETS = (
    ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "D4", "D5", "F4", "H3"]
    + [f"I2({k})" for k in range(3, 9)]
)
SMALL_FINITE = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "F4", "H3", "H4"] + [
    f"I2({k})" for k in range(3, 9)
]


@pytest.fixture(params=ORACLE_PRESETS)
def oracle_matrix(request):
    return preset(request.param)


_results: dict[int, list[bool]] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _results.setdefault(int(m.group(1)), []).append(report.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcomes = _results[n]
        status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status} ({sum(outcomes)}/{len(outcomes)} checks)")
