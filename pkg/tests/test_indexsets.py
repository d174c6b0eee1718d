from fractions import Fraction as F
from math import gcd, isqrt

from hypothesis import given, settings
from hypothesis import strategies as st

from isparse import AP, NATURALS, Finite, Ideal, Squares, asymptotic_density, union_density_incl_excl
from isparse.indexsets import filter_member, ideal_member

N = 10_000


def prefix_ratio(S, n=N):
    return F(sum(1 for k in range(1, n + 1) if k in S), n)


def test_density_examples():
    assert asymptotic_density(AP(1, 1)) == 1
    assert asymptotic_density(AP(2, 2)) == F(1, 2)
    assert abs(prefix_ratio(AP(2, 2)) - F(1, 2)) <= F(1, 100)
    assert asymptotic_density(AP(1, 2) | AP(2, 4)) == F(3, 4)
    assert union_density_incl_excl([AP(1, 2), AP(2, 4)]) == F(3, 4)
    assert asymptotic_density(Squares()) == 0
    assert prefix_ratio(Squares()) == F(isqrt(N), N)


def test_membership_examples():
    assert not ideal_member(Ideal.FIN, Squares())
    assert ideal_member(Ideal.DENSITY_ZERO, Squares())
    for I in Ideal:
        assert ideal_member(I, Finite([1, 2, 3]))
        assert not ideal_member(I, NATURALS)
    assert not ideal_member(Ideal.DENSITY_ZERO, AP(2, 2))
    assert filter_member(Ideal.DENSITY_ZERO, ~Squares())
    assert not filter_member(Ideal.FIN, ~Squares())


def test_expression_membership():
    S = (AP(1, 2) | Squares()) - Finite([9])
    assert [n for n in range(1, 20) if n in S] == [1, 3, 4, 5, 7, 11, 13, 15, 16, 17, 19]
    assert Finite([]).is_empty() and not Squares().is_empty()
    assert (AP(2, 4) & AP(1, 2)).is_empty()


def test_finite_and_same_set():
    assert (Squares() & AP(4, 4) & Finite(range(1, 50))).elements() == [4, 16, 36]
    assert (Squares() & AP(2, 4)).is_empty()
    assert (AP(1, 2) | AP(2, 2)).same_set(NATURALS)
    assert not Squares().is_finite()
    assert (Squares() & ~Squares()).is_finite()


@given(st.integers(1, 30), st.integers(1, 12), st.integers(1, 30), st.integers(1, 12))
def test_ap_intersection_crt(a, m, b, n):
    got = AP(a, m).intersect(AP(b, n))
    brute = [k for k in range(1, 2000) if k in AP(a, m) and k in AP(b, n)]
    if got is None:
        assert brute == []
    else:
        assert brute == [k for k in range(1, 2000) if k in got]
        assert got.step == m * n // gcd(m, n)


aps = st.lists(st.builds(AP, st.integers(1, 12), st.integers(1, 12)), min_size=1, max_size=4)


@settings(max_examples=60)
@given(aps)
def test_union_density_two_ways(parts):
    S = parts[0]
    for p in parts[1:]:
        S = S | p
    assert S.density == union_density_incl_excl(parts)
    assert abs(prefix_ratio(S) - S.density) <= F(1, 100)


@settings(max_examples=60)
@given(aps, st.integers(0, 2))
def test_boolean_density_prefix_oracle(parts, mode):
    S = parts[0]
    for p in parts[1:]:
        S = (S & p) if mode == 0 else (S - p) if mode == 1 else (~S | p)
    assert abs(prefix_ratio(S) - S.density) <= F(1, 100)
    assert S.prefix_count(500) == sum(1 for k in range(1, 501) if k in S)
