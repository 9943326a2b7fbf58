from __future__ import annotations


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, summary_line

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        terminalreporter.write_line(summary_line(num, *RESULTS[num]))
