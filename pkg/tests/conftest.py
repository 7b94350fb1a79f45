import random

import pytest
from hypothesis import settings

from biratkit.field import FieldSpec
from biratkit.polynomial import PolynomialRing

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

P = 70001


def ring(n, p=P, name="x"):
    return PolynomialRing(FieldSpec(p), [f"{name}{i}" for i in range(n)])


def random_poly(R, degree, rng, density=0.5):
    """Homogeneous form of the given degree with roughly `density` of the monomials present."""
    terms = {}
    for m in R.monomials_of_degree(degree):
        if rng.random() < density:
            terms[m] = rng.randrange(1, R.field.p) if R.field.p else rng.choice([-1, 1]) * rng.randint(1, 9)
    if not terms:
        terms[R.monomials_of_degree(degree)[0]] = 1
    return R.from_dict(terms)


@pytest.fixture
def R3():
    return ring(3)


@pytest.fixture
def rng():
    return random.Random(12345)


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
