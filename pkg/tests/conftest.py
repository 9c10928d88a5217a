"""Shared pytest wiring for the acceptance verdict block.

The acceptance tests record one line per criterion through the
record_verdict fixture; the terminal-summary hook replays them in a
dedicated section so every verdict is visible even though pytest captures
stdout for passing tests.
"""

import pytest

_VERDICTS = []


@pytest.fixture
def record_verdict():
    def emit(n: int, ok: bool, detail: str) -> str:
        line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}"
        _VERDICTS.append(line)
        print(line)
        return line

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _VERDICTS:
        terminalreporter.section("acceptance verdicts")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
