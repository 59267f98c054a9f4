from __future__ import annotations


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import CRITERIA, RESULTS, _line
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in CRITERIA:
        if key in RESULTS:
            terminalreporter.write_line(_line(key))
