import pytest

from maxprod.functions import get_function

ACCEPTANCE_LINES = {}


@pytest.fixture(params=["ratio", "expneg", "vee1", "bump"])
def bounded_f(request):
    return get_function(request.param)


@pytest.fixture
def acceptance_line():
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
