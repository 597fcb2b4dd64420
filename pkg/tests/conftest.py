import random
from fractions import Fraction

import pytest
from hypothesis import settings

from flatbundles.exactfield import field_make
from flatbundles.matrixgroup import Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

FIELD_SPECS = ["Q", "F(2)", "F(5)", "F(2, x^2+x+1)", "F(3, x^2+1)"]


@pytest.fixture(params=FIELD_SPECS)
def ctx(request):
    return field_make(request.param)


def random_matrix(ctx, n, rng, bound=3):
    return Matrix(ctx, [[ctx.random(rng, bound) for _ in range(n)] for _ in range(n)])


def random_invertible(ctx, n, rng, bound=3):
    while True:
        m = random_matrix(ctx, n, rng, bound)
        if m.is_invertible():
            return m


def rng_for(seed):
    return random.Random(seed)


def q(x):
    return Fraction(x)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line per acceptance criterion, then assert it."""

    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
