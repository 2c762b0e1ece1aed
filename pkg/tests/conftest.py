import pytest

from hhfermat.fixedlocus import Fermat
from hhfermat.group import Group, parse_element


def make_group(gens, N, n):
    return Group([parse_element(g, N, n) for g in gens], N, n)


@pytest.fixture
def el():
    def parse(text, N, n):
        return parse_element(text, N, n)
    return parse


@pytest.fixture
def fermat():
    return Fermat


ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
