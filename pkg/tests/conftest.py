import pytest

from tjcm import SdnParams, build_sdn_state

# one line per acceptance criterion, filled by test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def coherent7():
    return build_sdn_state(SdnParams(7.0, 0.0, 0))


@pytest.fixture(scope="session")
def coherent3():
    return build_sdn_state(SdnParams(3.0, 0.0, 0))


@pytest.fixture(scope="session")
def small_field():
    return build_sdn_state(SdnParams(2.0, 1.0, 1), cutoff=25)
