import pytest

from kpdist.painleve import ABFamily, solve_hastings_mcleod

ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def ps():
    return solve_hastings_mcleod()


@pytest.fixture(scope="session")
def family(ps):
    return ABFamily(ps)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
