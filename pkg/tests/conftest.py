import random
import sys
from fractions import Fraction

import pytest

from markovwires import Alphabet, automaton
from markovwires.dsl import Environment, builtin_library

E = "eps"


@pytest.fixture(scope="session")
def lib():
    return Environment(builtin_library())


@pytest.fixture(scope="session")
def phil(lib):
    return lib("Phil")


@pytest.fixture(scope="session")
def fork(lib):
    return lib("Fork")


@pytest.fixture(scope="session")
def example(lib):
    return lib("Example")


@pytest.fixture
def rng():
    return random.Random(1234)


def chain(weights=(2, 3, 5)):
    """States 1, 2 over single-label alphabets: 1->1, 1->2, 2->2."""
    one = Alphabet.of("a")
    w11, w12, w22 = weights
    return automaton(["1", "2"], one, one,
                     [("1", "a", "a", "1", w11), ("1", "a", "a", "2", w12), ("2", "a", "a", "2", w22)])


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
