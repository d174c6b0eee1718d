from fractions import Fraction as F

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import interval_sets, rationals
from isparse import (
    AP,
    Finite,
    GapSet,
    Ideal,
    Interval,
    IntervalSet,
    PointDensity,
    Rule,
    Squares,
    WindowFamily,
    classify_point_i_density,
    i_density_enclosure,
    i_liminf,
    i_limsup,
    normalize,
    ratio_sequence,
    seq_add,
    seq_dominates,
    validate_window_family,
)
from isparse.idensity import exact_i_densities
from isparse.suites import _random_family

UNIT = normalize([(0, 1)])


def test_window_rules():
    assert WindowFamily.symmetric(F(1, 2)).window(1) == Interval(F(1, 4), F(3, 4))
    assert WindowFamily.right_geometric(0, 2).window(2) == Interval(0, F(1, 16))
    assert WindowFamily(1, Rule.LEFT_HARMONIC).window(3) == Interval(F(3, 4), 1)
    W = WindowFamily(0, Rule.RIGHT_HARMONIC, prefix=(Interval(-1, 1),))
    assert W.window(1) == Interval(-1, 1) and W.window(2) == Interval(0, F(1, 3))
    with pytest.raises(ValueError):
        WindowFamily(0, Rule.SYMMETRIC, prefix=(Interval(1, 2),))


def test_validation_examples():
    assert validate_window_family(WindowFamily.right_geometric(0, 2), Ideal.FIN)
    evens = WindowFamily.symmetric(0, exception_set=AP(2, 2), exception_window=Interval(0, 1))
    assert not validate_window_family(evens, Ideal.DENSITY_ZERO)
    sq = WindowFamily.symmetric(0, exception_set=Squares(), exception_window=Interval(0, 1))
    assert validate_window_family(sq, Ideal.DENSITY_ZERO)
    assert not validate_window_family(sq, Ideal.FIN)
    fin = WindowFamily.symmetric(0, exception_set=Finite([1, 5]), exception_window=Interval(-1, 1))
    assert validate_window_family(fin, Ideal.FIN)


def test_shrink_set_counts_short_exceptional_windows():
    # an exceptional window of length 1/10 still satisfies |J_n| < 1/n for n < 10
    W = WindowFamily.symmetric(0, exception_set=AP(1, 1), exception_window=Interval(0, F(1, 10)))
    S = W.shrink_set()
    assert [n for n in range(1, 15) if n in S] == list(range(1, 10))


def test_ratio_sequence_examples():
    seq = ratio_sequence(UNIT, WindowFamily.symmetric(F(1, 2)), 10)
    assert all(b.lo == b.hi == 1 for b in seq.prefix)
    empty = ratio_sequence(IntervalSet.empty(), WindowFamily.symmetric(0), 5)
    assert all(b.hi == 0 for b in empty.prefix) and empty.tail.hi == 0
    G = GapSet(2)
    g = ratio_sequence(G, WindowFamily.right_geometric(0, 2), 4, truncation=3)
    assert g.prefix[0].lo == F(289, 512)
    for n, b in enumerate(g.prefix, start=1):
        assert b.contains(G.ratio_bounds(G.b(n), 8).lo)


def test_enclosure_examples():
    for I in Ideal:
        e = i_density_enclosure(UNIT, F(1, 2), I, [WindowFamily.symmetric(F(1, 2))])
        assert e.upper_lower_bound == 1 and e.lower_upper_bound == 1 and e.value == 1
        z = i_density_enclosure(UNIT, 2, I, [WindowFamily.symmetric(2)])
        assert z.value == 0 and z.upper_lower_bound == 0
    with pytest.raises(ValueError):
        i_density_enclosure(UNIT, 0, Ideal.FIN, [])


def test_gap_set_upper_i_density():
    G = GapSet(2)
    e = i_density_enclosure(G, 0, Ideal.DENSITY_ZERO, [WindowFamily.right_geometric(0, 2)])
    assert e.upper_lower_bound >= F(1, 2)
    assert e.exact_upper is None
    with pytest.raises(ValueError):
        bad = WindowFamily.right_geometric(0, 2, exception_set=Squares(), exception_window=Interval(0, 1))
        i_density_enclosure(G, 0, Ideal.FIN, [bad])


def test_classification_examples():
    assert classify_point_i_density(UNIT, F(1, 2), Ideal.FIN) is PointDensity.ONE
    assert classify_point_i_density(UNIT, 3, Ideal.DENSITY_ZERO) is PointDensity.ZERO
    for I in Ideal:
        assert classify_point_i_density(UNIT, 1, I) is PointDensity.RIGHT_ZERO_LEFT_ONE
        assert classify_point_i_density(UNIT, 0, I) is PointDensity.RIGHT_ONE_LEFT_ZERO


@settings(max_examples=50, deadline=None)
@given(interval_sets, rationals, st.sampled_from(list(Ideal)), st.integers(0, 10**6))
def test_family_limits_match_classification(E, p, I, seed):
    W = _random_family(random.Random(seed), p, I)
    seq = ratio_sequence(E, W, 12)
    up, low = exact_i_densities(E, p)
    s, i = seq.i_limsup(I), seq.i_liminf(I)
    assert s.lo == s.hi and i.lo == i.hi
    assert low <= i.lo <= s.lo <= up
    if W.rule is Rule.SYMMETRIC:
        assert s.lo == (up + low) / 2


@settings(max_examples=50, deadline=None)
@given(interval_sets, interval_sets, rationals, st.sampled_from(list(Ideal)), st.integers(0, 10**6))
def test_ratio_subadditive_and_monotone(E, F_, p, I, seed):
    W = _random_family(random.Random(seed), p, I)
    xe, xf, xu = (ratio_sequence(S, W, 10).step_sequences()[0] for S in (E, F_, E | F_))
    assert seq_dominates(xu, seq_add(xe, xf))
    assert seq_dominates(xe, xu)
    assert i_limsup(xu, I) <= i_limsup(xe, I) + i_limsup(xf, I)
    assert i_limsup(xe, I) <= i_limsup(xu, I) and i_liminf(xe, I) <= i_liminf(xu, I)


@settings(max_examples=40, deadline=None)
@given(interval_sets, rationals)
def test_exceptions_in_ideal_are_irrelevant(E, p):
    plain = WindowFamily.symmetric(p)
    odd = WindowFamily.symmetric(p, exception_set=Squares(), exception_window=Interval(p - 3, p + 5))
    a = ratio_sequence(E, plain, 10)
    b = ratio_sequence(E, odd, 10)
    I = Ideal.DENSITY_ZERO
    assert (a.i_limsup(I), a.i_liminf(I)) == (b.i_limsup(I), b.i_liminf(I))
