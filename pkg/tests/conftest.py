"""Prints one line per acceptance criterion after the test run."""

import re

_results: dict[str, tuple[str, float, str]] = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = dict(report.user_properties).get("detail", "")
        key = f"criterion {int(match.group(1)):2d} ({match.group(2).replace('_', ' ')})"
        _results[key] = (report.outcome.upper(), report.duration, detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_results):
        outcome, duration, detail = _results[key]
        line = f"{key}: {outcome} in {duration:.1f}s"
        terminalreporter.write_line(f"{line}; {detail}" if detail else line)
