import sys

import pytest

from helpers import ILLUSTRATIVE, X4, polys


@pytest.fixture
def illustrative():
    return polys(ILLUSTRATIVE, X4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
