import pytest

from numera.counting import growth_profile
from numera.fixtures import load
from numera.realline import partition_table

ACCEPTANCE = {}


class Sys:
    def __init__(self, name):
        self.name = name
        self.d = load(name)
        self.g = growth_profile(self.d)
        self.table = partition_table(self.g, self.d)
        self.F = self.g.field


@pytest.fixture(scope="session")
def ex5():
    return Sys("ex5")


@pytest.fixture(scope="session")
def binary():
    return Sys("binary")


@pytest.fixture(scope="session")
def fib():
    return Sys("fib")


@pytest.fixture(scope="session")
def evena():
    return Sys("evena")


@pytest.fixture(scope="session")
def golden():
    from numera.pisot import build_bertrand, field_from_coefficients, theta_expansion_of_one

    f = field_from_coefficients([-1, -1, 1])
    return build_bertrand(theta_expansion_of_one(f), f)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"AC{n:>2} {'PASS' if ok else 'FAIL'}  {text}")
