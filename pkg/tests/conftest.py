from fractions import Fraction

import pytest
from hypothesis import strategies as st

from nderiv.exactfield import Poly, RatFunc
from nderiv.operators import OperatorFunc

small_q = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))
nonzero_q = small_q.filter(lambda q: q != 0)


@st.composite
def polys(draw, max_degree=3):
    return Poly(draw(st.lists(small_q, max_size=max_degree + 1)))


@st.composite
def ratfuncs(draw, max_degree=3, nonzero=False):
    num = draw(polys(max_degree))
    den = draw(polys(max_degree).filter(lambda p: not p.is_zero()))
    u = RatFunc(num, den)
    if nonzero and u.is_zero():
        u = RatFunc(1)
    return u


@st.composite
def operators(draw, max_order=3, max_degree=2):
    lam = draw(ratfuncs(max_degree))
    coeffs = draw(st.dictionaries(st.integers(1, max_order), ratfuncs(max_degree), max_size=max_order))
    return OperatorFunc(lam, coeffs)


@pytest.fixture
def t():
    return RatFunc.t()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
