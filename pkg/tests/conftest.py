from fractions import Fraction

import pytest

from biracah.numcore import precision
from biracah.spherewave import RacahContext

TRIPLES = [
    (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)),
    (Fraction(1, 4), Fraction(3, 4), Fraction(1)),
    (Fraction(2, 3), Fraction(1, 3), Fraction(5, 4)),
]


def contexts(nmax, triples=TRIPLES):
    return [RacahContext(*mus, N) for mus in triples for N in range(nmax + 1)]


def ctx_id(ctx):
    return f"{ctx.mu1}-{ctx.mu2}-{ctx.mu3}-N{ctx.N}"


@pytest.fixture
def prec60():
    with precision(60):
        yield 60


@pytest.fixture
def prec30():
    with precision(30):
        yield 30


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
