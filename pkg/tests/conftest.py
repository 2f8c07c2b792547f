import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from simultile import ElementarySet, FieldNum, Interval, PiecewiseFn  # noqa: E402
from simultile.numeric import ComplexField  # noqa: E402
from simultile.stepfn import Piece  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))
small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
fieldnums = st.builds(FieldNum, rationals, small_rationals)
nonzero_fieldnums = fieldnums.filter(lambda x: x.sign() != 0)
positive_fieldnums = fieldnums.filter(lambda x: x.sign() > 0)
complexes = st.builds(ComplexField, fieldnums, st.one_of(st.just(FieldNum(0)), fieldnums))


@st.composite
def line_sets(draw, max_parts=4):
    pts = sorted(set(draw(st.lists(fieldnums, min_size=0, max_size=2 * max_parts))))
    return ElementarySet(Interval(lo, hi) for lo, hi in zip(pts[::2], pts[1::2]))


@st.composite
def step_functions(draw, max_parts=4, affine=True):
    pts = sorted(set(draw(st.lists(fieldnums, min_size=0, max_size=2 * max_parts))))
    pieces = []
    for lo, hi in zip(pts[::2], pts[1::2]):
        c0 = draw(complexes)
        c1 = draw(complexes) if affine and draw(st.booleans()) else ComplexField(0)
        pieces.append(Piece(Interval(lo, hi), c0, c1))
    return PiecewiseFn(pieces)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        title, passed = results[num]
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if passed else 'FAIL'}  {title}")
