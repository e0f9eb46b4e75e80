import re

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def record(criterion, ok, detail):
        _ACCEPTANCE_LINES.append((str(criterion), f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"))
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(_ACCEPTANCE_LINES, key=lambda item: (int(re.match(r"\d+", item[0]).group()), item[0])):
            terminalreporter.write_line(line)
