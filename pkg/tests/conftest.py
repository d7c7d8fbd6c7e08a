import pytest

from netlog.poly import standard_ring

CRITERIA = {}


def record(number, ok, detail=""):
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def R4():
    return standard_ring(4)


@pytest.fixture(scope="session")
def R3():
    return standard_ring(3)
