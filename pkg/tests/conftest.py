import pytest

_CRITERIA = {}


@pytest.fixture
def record_criterion():
    def record(number, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] {number} {detail}"
        _CRITERIA[number] = line
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_CRITERIA):
            terminalreporter.write_line(_CRITERIA[number])
