import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def _criterion(number: int, title: str, seconds: float):
    start = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        elapsed = time.perf_counter() - start
        if status == "PASS" and elapsed >= seconds:
            status = "FAIL"
        ACCEPTANCE_LINES.append(f"{status} criterion {number:>2}: {title} ({elapsed:.2f}s, limit {seconds:g}s)")
    assert elapsed < seconds, f"criterion {number} took {elapsed:.2f}s, limit {seconds}s"


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
