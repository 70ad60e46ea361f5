from pathlib import Path

import sys

import pytest

from nivat.configuration import DoublyPeriodic, Layer, Sum, checkerboard, constant
from nivat.sequences import fibonacci, thue_morse

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


def tm_layer():
    return Layer((0, 1), thue_morse())


def fib_layer():
    # varies along x: value at (x, y) is f(x)
    return Layer((0, -1), fibonacci())


def fib_parts():
    a = Layer((0, -1), fibonacci())
    b = Layer((1, 0), fibonacci())
    return a, b


def fib_sum():
    a, b = fib_parts()
    return Sum([(1, a), (2, b)], periods=())


def periodic_3x2():
    return DoublyPeriodic((3, 0), (0, 2), [[0, 1, 5], [2, 2, 7]])


@pytest.fixture
def const():
    return constant(1)


@pytest.fixture
def cb():
    return checkerboard()


@pytest.fixture
def tm():
    return tm_layer()


@pytest.fixture
def fl():
    return fib_layer()


@pytest.fixture
def fs():
    return fib_sum()


@pytest.fixture
def p32():
    return periodic_3x2()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
