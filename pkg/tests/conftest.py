from __future__ import annotations

import re
from collections import OrderedDict

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_outcomes: "OrderedDict[int, list]" = OrderedDict()


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes.setdefault(int(match.group(1)), []).append((report.nodeid, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        failed = [nodeid.split("::")[-1] for nodeid, outcome in results if outcome != "passed"]
        status = "FAIL" if failed else "PASS"
        detail = " (%s)" % ", ".join(failed) if failed else ""
        terminalreporter.write_line("criterion %2d: %s%s" % (number, status, detail))
