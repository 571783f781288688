import pytest

from trifact.braces import enumerate_braces
from trifact.named import small_groups_up_to_8


@pytest.fixture(scope="session")
def groups():
    return small_groups_up_to_8()


@pytest.fixture(scope="session")
def corpus(groups):
    """Every brace whose additive group has order 2..8, keyed by group name."""
    return {name: enumerate_braces(G) for name, G in groups.items()}


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
