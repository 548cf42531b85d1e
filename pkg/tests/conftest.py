from functools import lru_cache

import pytest

from quiverkoszul import fixtures
from quiverkoszul.algebra import Algebra
from quiverkoszul.hochschild import Hochschild
from quiverkoszul.koszul_dual import KoszulDual

KOSZUL = ("ex51", "ex52", "ex53", "ex53_c2", "ex53_cm1")


@lru_cache(maxsize=None)
def session(name, maxdeg=None, pin=True):
    """(resolution, Hochschild, KoszulDual) for a built-in fixture, shared across tests."""
    res = fixtures.resolution(name, maxdeg, pin=pin)
    hh = Hochschild(res)
    return res, hh, KoszulDual(hh)


@lru_cache(maxsize=None)
def algebra(name, maxdeg=None):
    return Algebra(fixtures.load(name, maxdeg))


@pytest.fixture(params=KOSZUL)
def koszul_name(request):
    return request.param


ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
