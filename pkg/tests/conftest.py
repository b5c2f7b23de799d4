import pytest

from chromabound.extension import run_comp1_all

# acceptance lines collected by test_acceptance.py, printed after the run
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def comp1_reports():
    return run_comp1_all()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
