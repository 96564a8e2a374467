from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import settings

from qdual.series import QSeries

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_rationals = rationals.filter(bool)


@st.composite
def series(draw, lattice=1, low=-3, high=12, min_terms=0):
    """A random truncated series on the lattice (1/lattice)Z."""
    order = draw(st.integers(min_value=max(low + 1, 1), max_value=high))
    exps = draw(st.lists(st.integers(low, order - 1), min_size=min_terms, max_size=8, unique=True))
    coeffs = draw(st.lists(nonzero_rationals, min_size=len(exps), max_size=len(exps)))
    return QSeries({Fraction(e, lattice): c for e, c in zip(exps, coeffs)}, Fraction(order, lattice), lattice)


@st.composite
def invertible_series(draw, lattice=1):
    """A series with a nonzero leading coefficient well below its order."""
    order = draw(st.integers(min_value=4, max_value=14))
    lead = draw(st.integers(-3, 2))
    rest = draw(st.lists(st.tuples(st.integers(lead + 1, order - 1), nonzero_rationals), max_size=6))
    terms = {Fraction(lead, lattice): draw(nonzero_rationals)}
    for e, c in rest:
        terms[Fraction(e, lattice)] = c
    return QSeries(terms, Fraction(order, lattice), lattice)


# -- acceptance criteria log -------------------------------------------------------

import contextlib

import pytest

_CRITERIA = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """``with criterion(n, title):`` records one PASS/FAIL line for the summary."""
    log = request.config.stash.setdefault(_CRITERIA, {})

    @contextlib.contextmanager
    def record(n: int, title: str):
        try:
            yield
        except BaseException:
            log[n] = f"criterion {n:2}: FAIL  {title}"
            raise
        log[n] = f"criterion {n:2}: PASS  {title}"

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_CRITERIA, {})
    if log:
        terminalreporter.section("acceptance criteria")
        for n in sorted(log):
            terminalreporter.write_line(log[n])
