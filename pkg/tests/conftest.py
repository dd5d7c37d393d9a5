"""Shared pytest wiring.

The acceptance module records one line per criterion; echoing them after
the terminal summary keeps them visible under captured output.
"""

ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
