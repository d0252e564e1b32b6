import pytest

# acceptance lines recorded by test_acceptance.py, echoed at the end of the run
ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    return ACCEPTANCE.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
