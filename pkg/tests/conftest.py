import random

import pytest

from toricmld.ideals import MonomialRIdeal
from toricmld.valuations import ToricGerm


@pytest.fixture
def rng():
    return random.Random(20261015)


@pytest.fixture
def smooth2():
    return ToricGerm.smooth(2)


@pytest.fixture
def smooth3():
    return ToricGerm.smooth(3)


def ideal(gens, exp=1):
    return MonomialRIdeal.of(gens, exp)


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Collects one summary line per acceptance criterion."""
    rec = {"label": request.node.name, "detail": ""}
    yield rec
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {rec['label']}  {rec['detail']}".rstrip())


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
