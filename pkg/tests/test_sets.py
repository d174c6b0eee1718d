from fractions import Fraction as F

import pytest
from hypothesis import given

from conftest import grid, inside, interval_sets, raw_intervals
from isparse import (
    Interval,
    IntervalSet,
    PointClass,
    complement_within,
    contains_point,
    intersect,
    measure,
    normalize,
    symdiff,
    union,
)
from isparse.sets import as_rational, parse_intervals


def segment_measure(raw):
    """Oracle: total length of the segments whose midpoint is covered."""
    pts = sorted({e for J in raw for e in (J.lo, J.hi)})
    return sum((b - a for a, b in zip(pts, pts[1:]) if inside(raw, (a + b) / 2)), F(0))


def test_normalize_examples():
    assert normalize([]) == IntervalSet.empty()
    assert normalize([(0, 1), (1, 2)]) == normalize([(0, 2)])
    assert list(normalize([(0, F(1, 2)), (F(1, 4), F(3, 4))])) == [Interval(0, F(3, 4))]


def test_normalize_drops_degenerate_and_rejects_malformed():
    assert normalize([(1, 1)]) == IntervalSet.empty()
    with pytest.raises(ValueError):
        normalize([(2, 1)])


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_measure_examples():
    assert measure(IntervalSet.empty()) == 0
    assert measure(parse_intervals([(0, 1), (2, 3)])) == 2
    assert measure(normalize([(0, F(1, 2)), (F(1, 4), F(3, 4))])) == F(3, 4)


def test_set_operation_examples():
    assert intersect(normalize([(0, 1)]), normalize([(2, 3)])) == IntervalSet.empty()
    W = Interval(0, 1)
    assert complement_within(normalize([(F(1, 4), F(1, 2))]), W) == normalize([(0, F(1, 4)), (F(1, 2), 1)])


def test_contains_point_examples():
    E = normalize([(0, 1)])
    assert contains_point(E, F(1, 2)) is PointClass.INTERIOR
    assert contains_point(E, 0) is PointClass.BOUNDARY
    assert contains_point(E, 2) is PointClass.OUTSIDE


@given(raw_intervals())
def test_normalize_matches_membership_oracle(raw):
    E = normalize(raw)
    for q in grid(raw):
        assert contains_point(E, q) is (PointClass.INTERIOR if inside(raw, q) else PointClass.OUTSIDE)
    assert measure(E) == segment_measure(raw)


@given(raw_intervals())
def test_normalize_idempotent_and_canonical(raw):
    E = normalize(raw)
    assert normalize(E) == E
    assert all(a.hi < b.lo for a, b in zip(E, list(E)[1:]))
    assert all(J.lo < J.hi for J in E)


@given(interval_sets, interval_sets)
def test_inclusion_exclusion_of_measure(A, B):
    assert measure(union(A, B)) + measure(intersect(A, B)) == measure(A) + measure(B)


@given(interval_sets, interval_sets, interval_sets)
def test_algebra_laws(A, B, C):
    assert A | B == B | A and A & B == B & A
    assert (A | B) | C == A | (B | C)
    assert (A & B) & C == A & (B & C)
    assert A & (B | C) == (A & B) | (A & C)
    assert symdiff(A, A) == IntervalSet.empty()
    assert symdiff(A, B) == (A - B) | (B - A)


@given(raw_intervals(), raw_intervals())
def test_operations_match_pointwise_oracle(ra, rb):
    A, B = normalize(ra), normalize(rb)
    ends = set(A.endpoints()) | set(B.endpoints())
    for q in grid(ra, rb):
        if q in ends:
            continue
        a, b = inside(ra, q), inside(rb, q)
        assert (contains_point(A | B, q) is PointClass.INTERIOR) == (a or b)
        assert (contains_point(A & B, q) is PointClass.INTERIOR) == (a and b)
        assert (contains_point(A - B, q) is PointClass.INTERIOR) == (a and not b)


@given(interval_sets)
def test_complement_measure(A):
    W = Interval(-5, 5)
    assert measure(complement_within(A, W)) == W.length - measure(intersect(A, normalize([W])))


@given(interval_sets, interval_sets)
def test_measure_monotone(A, B):
    S = A & B
    assert S.issubset(B)
    assert measure(S) <= measure(B)
