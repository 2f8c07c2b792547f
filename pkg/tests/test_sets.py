import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import line_sets, positive_fieldnums
from simultile import SQRT, ElementarySet, FieldNum, Interval, decompose_below, fiber_count, measure, project
from simultile.errors import AmbientMismatch, NonPositiveDelta
from simultile.sets import arc, set_boolean


def S(*parts, ambient=None):
    return ElementarySet(parts, ambient)


class TestBoolean:
    def test_adjacent_union_merges(self):
        assert set_boolean(S((0, 1)), S((1, 2)), "union") == S((0, 2))

    def test_subtract_irrational_endpoint(self):
        assert set_boolean(S((0, 2)), S((1, SQRT)), "subtract") == S((0, 1), (SQRT, 2))

    def test_disjoint_intersection_empty(self):
        assert not set_boolean(S((0, 1)), S((2, 3)), "intersect")

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatch):
            S((0, 1)) | S((0, 1), ambient=2)

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            set_boolean(S((0, 1)), S((0, 1)), "xor")

    @given(line_sets(), line_sets())
    def test_inclusion_exclusion(self, X, Y):
        assert measure(X | Y) + measure(X & Y) == measure(X) + measure(Y)

    @given(line_sets(), line_sets())
    def test_membership_oracle(self, X, Y):
        pts = {p for Z in (X, Y) for iv in Z.parts for p in (iv.lo, iv.hi, (iv.lo + iv.hi) / 2)}
        U, I, D = X | Y, X & Y, X - Y
        for x in pts:
            a, b = X.contains(x), Y.contains(x)
            assert U.contains(x) == (a or b)
            assert I.contains(x) == (a and b)
            assert D.contains(x) == (a and not b)

    @given(line_sets())
    def test_normalized_parts(self, X):
        for a, b in zip(X.parts, X.parts[1:]):
            assert a.hi < b.lo


class TestMeasure:
    def test_examples(self):
        assert measure(S()) == 0
        assert measure(S((0, 1), (2, 2 + SQRT))) == 1 + SQRT
        assert measure(ElementarySet.full_circle(SQRT)) == SQRT


class TestProject:
    def test_examples(self):
        assert project(S((0, F(1, 2))), 1) == S((0, F(1, 2)), ambient=1)
        assert project(S((F(3, 4), F(5, 4))), 1) == S((0, F(1, 4)), (F(3, 4), 1), ambient=1)
        assert project(S((0, 3)), 1) == ElementarySet.full_circle(1)

    @given(line_sets(), positive_fieldnums)
    def test_measure_bound(self, X, L):
        P = project(X, L)
        assert measure(P) <= min(measure(X), L)
        assert P.ambient == L

    def test_injective_image_keeps_measure(self):
        # images [0, 1/3) and [sqrt2 - 1, sqrt2 - 3/4) in T_1 are disjoint
        X = S((0, F(1, 3)), (SQRT, SQRT + F(1, 4)))
        assert measure(project(X, 1)) == measure(X)
        assert [fiber_count(X, 1, a) for a in (F(1, 6), F(1, 2), F(3, 4))] == [1, 1, 0]

    def test_arc_wraps(self):
        A = arc(1, F(3, 4), F(1, 2))
        assert A == S((0, F(1, 4)), (F(3, 4), 1), ambient=1)


class TestDecompose:
    def test_unit_interval_half(self):
        pieces = decompose_below(S((0, 1)), F(1, 2))
        assert [measure(p) for p in pieces] == [F(1, 3)] * 3

    def test_already_short(self):
        assert decompose_below(S((0, F(1, 4))), F(1, 2)) == [S((0, F(1, 4)))]

    def test_two_parts(self):
        pieces = decompose_below(S((0, 1), (2, F(5, 2))), F(1, 3))
        # 4 equal pieces of [0,1) and 2 of [2,5/2), by enumeration
        assert len(pieces) == 6
        assert all(measure(p) < F(1, 3) for p in pieces)

    def test_nonpositive_delta(self):
        with pytest.raises(NonPositiveDelta):
            decompose_below(S((0, 1)), 0)

    @given(line_sets(), positive_fieldnums)
    def test_pieces_tile(self, X, delta):
        pieces = decompose_below(X, delta)
        assert all(measure(p) < delta for p in pieces)
        assert sum((measure(p) for p in pieces), FieldNum(0)) == measure(X)
        union = ElementarySet()
        for p in pieces:
            assert union.isdisjoint(p)
            union = union | p
        assert union == X


def _enumerate_fiber(X, L, a, span=50):
    return sum(1 for k in range(-span, span) if X.contains(a + L * k))


class TestFiberCount:
    def test_examples(self):
        assert fiber_count(S((0, 2)), 1, F(1, 2)) == 2
        assert fiber_count(S((0, 1)), SQRT, 0) == 1

    def test_irrational_example_by_enumeration(self):
        X = S((0, 1), (1 + SQRT, 2 + SQRT))
        a = SQRT / 2
        assert fiber_count(X, SQRT, a) == _enumerate_fiber(X, SQRT, a) == 1
        assert fiber_count(X, SQRT, F(1, 2)) == _enumerate_fiber(X, SQRT, F(1, 2)) == 2

    @given(line_sets(max_parts=3), positive_fieldnums.filter(lambda L: L > F(1, 2)), st.fractions(0, 1))
    def test_matches_enumeration(self, X, L, t):
        a = L * t
        if a >= L:
            return
        assert fiber_count(X, L, a) == _enumerate_fiber(X, L, a, span=200)


def test_interval_rejects_empty():
    with pytest.raises(ValueError):
        Interval(1, 1)


def test_circle_set_bounds():
    with pytest.raises(ValueError):
        S((0, 2), ambient=1)
    assert math.floor(measure(ElementarySet.full_circle(1 + SQRT))) == 2
