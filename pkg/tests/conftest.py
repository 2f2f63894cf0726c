import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from mpv.exactring import LaurentPoly, RingElem  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile("default")

coefs = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent(draw, names=("t",), lo=-2, hi=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = [0, 0, 0, 0]
        for name in names:
            e[("t", "tau", "U", "V").index(name)] = draw(st.integers(lo, hi))
        terms[tuple(e)] = draw(coefs)
    return LaurentPoly(terms)


@st.composite
def ring_elems(draw, names=("t",)):
    num = draw(laurent(names))
    den = draw(laurent(names).filter(lambda p: not p.is_zero()))
    return RingElem(num, den)


@st.composite
def sample_points(draw, names=("t",)):
    vals = st.fractions(min_value=Fraction(-7, 2), max_value=Fraction(7, 2), max_denominator=3)
    vals = vals.filter(lambda q: q != 0)
    return {name: draw(vals) for name in names}


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
