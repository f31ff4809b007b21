"""Print one PASS/FAIL line per acceptance criterion at the end of the run."""

import re

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call" or report.failed:
        detail = dict(report.user_properties).get("detail", "")
        _CRITERIA[num] = ("PASS" if report.passed else "FAIL", report.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status, secs, detail = _CRITERIA[num]
        line = f"criterion {num}: {status} ({secs:.1f} s)"
        terminalreporter.write_line(line + (f" {detail}" if detail else ""))
