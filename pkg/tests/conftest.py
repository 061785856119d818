import time

import pytest

_RESULTS: list[tuple[int, str, bool, float, float]] = []


class Criterion:
    """Times one acceptance criterion and records its pass/fail line."""

    def __init__(self, number: int, name: str, limit: float):
        self.number, self.name, self.limit = number, name, limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        ok = exc_type is None and elapsed < self.limit
        _RESULTS.append((self.number, self.name, ok, elapsed, self.limit))
        if exc_type is None and not ok:
            pytest.fail(f"criterion {self.number} took {elapsed:.1f}s, limit {self.limit}s")
        return False


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok, elapsed, limit in sorted(_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {number}. {name} ({elapsed:.2f}s, limit {limit:g}s)")
