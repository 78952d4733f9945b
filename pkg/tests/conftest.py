"""Prints one PASS/FAIL line per acceptance criterion at the end of a run."""

_ACCEPTANCE: dict[str, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        label = report.nodeid.split("::")[-1]
        _ACCEPTANCE[label] = (label, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in sorted(_ACCEPTANCE.values()):
        num = int(label.split("_")[2])
        title = " ".join(label.split("_")[3:])
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num:2d}: {title}")
