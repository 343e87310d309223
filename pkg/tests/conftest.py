import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

CRITERIA = []


def _record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    CRITERIA.append(line)
    print(line)
    return ok


@pytest.fixture
def record():
    """Print and collect one pass/fail line per acceptance check."""
    return _record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
