from pathlib import Path

import pytest

from signed_opinion import IdentityParams, build_opinion_exchange, complete_network, ring_network

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def fig1():
    net, groups = complete_network((1, 3))
    return net, groups, build_opinion_exchange(net, groups, IdentityParams(1.0, -1.0))


@pytest.fixture
def fig2():
    net, groups = ring_network("AAABBB")
    return net, groups, build_opinion_exchange(net, groups, IdentityParams(1.0, -1.0))


@pytest.fixture
def fig3():
    net, groups = complete_network((2, 2))
    return net, groups, build_opinion_exchange(net, groups, IdentityParams(1.0, -1.0))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
