import pytest

_CRITERIA = {}


@pytest.fixture
def record_criterion():
    """Store a one-line verdict per acceptance criterion for the terminal summary."""
    def record(number: int, passed: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
        _CRITERIA[number] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
