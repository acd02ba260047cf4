import numpy as np
import pytest
from hypothesis import strategies as st

from toricmle import exact
from toricmle.fixtures import veronese_example_model, VERONESE_EXAMPLE_EASY
from toricmle.model import validate_model


def random_model(rng, rows=None, cols=None, max_entry=3, positive_c=True):
    """Random full-rank model with small nonnegative exponents."""
    while True:
        r = rows if rows is not None else int(rng.integers(1, 4))
        n = cols if cols is not None else int(rng.integers(r + 2, r + 7))
        A = rng.integers(0, max_entry + 1, size=(r, n))
        if exact.rank(np.vstack([A, np.ones((1, n), int)]).tolist()) == r + 1:
            c = rng.uniform(0.5, 3.0, size=n) if positive_c else rng.uniform(-2, 2, size=n)
            return validate_model(A, c)


@st.composite
def models(draw, max_rows=3, max_entry=3):
    r = draw(st.integers(1, max_rows))
    n = draw(st.integers(r + 2, r + 5))
    A = draw(st.lists(st.lists(st.integers(0, max_entry), min_size=n, max_size=n), min_size=r, max_size=r))
    Ab = [row for row in A] + [[1] * n]
    from hypothesis import assume

    assume(exact.rank(Ab) == r + 1)
    c = draw(st.lists(st.floats(0.25, 4.0), min_size=n, max_size=n))
    return validate_model(A, c)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def vstat():
    return veronese_example_model()


@pytest.fixture
def veasy():
    return veronese_example_model(VERONESE_EXAMPLE_EASY)


ACCEPTANCE_LINES = []


def record(criterion: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
