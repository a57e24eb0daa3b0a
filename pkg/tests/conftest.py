import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from typea_stab import reference_model  # noqa: E402


@pytest.fixture(scope="session")
def model():
    return reference_model()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
