from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import interval_sets, rationals
from isparse import (
    GapSet,
    GapUnion,
    Ideal,
    IntervalSet,
    PointDensity,
    classify_point_i_density,
    gap_density_bounds,
    i_sparse_falsify,
    measure,
    normalize,
    reflect_left,
    sparse_certify_right,
    sparse_check,
    sparse_check_interval_set,
    sparse_interior,
    verify_certificate,
)
from isparse.certificate import CertificateFormatError, dumps, loads, _ratio_upper
from isparse.sparse import DepthError
from isparse.suites import GRID, certificate_mutations, certify_with_retry

UNIT = normalize([(0, 1)])

# Frozen from the first certifier run; every h was independently accepted.
FROZEN_H = {
    (F(3, 2), F(1, 2)): F(350, 809),
    (F(2), F(1, 2)): F(1, 4),
    (F(2), F(1, 10)): F(1, 32),
    (F(2), F(1, 100)): F(1, 1024),
    (F(10), F(1, 10)): F(1, 100),
    (F(10), F(1, 100)): F(1, 100000),
}


def test_trichotomy_examples():
    assert not sparse_check_interval_set(UNIT, 0, "right")
    assert sparse_check_interval_set(UNIT, 0, "left")
    assert sparse_check_interval_set(UNIT, 2, "right")
    assert not sparse_check(UNIT, F(1, 2))
    with pytest.raises(ValueError):
        sparse_check_interval_set(UNIT, 0, "up")


def test_reflection():
    E = normalize([(1, 2)])
    assert reflect_left(E, 1) == normalize([(0, 1)])
    assert sparse_check_interval_set(E, 1, "left") == sparse_check_interval_set(reflect_left(E, 1), 1, "right")


def test_certificate_examples():
    t = sparse_certify_right(GapSet(2), 2, 6)
    assert t.trivial and t.h == 1 and verify_certificate(t)
    cert = sparse_certify_right(GapSet(2), F(1, 10), 6)
    assert cert.h <= F(1, 32) and verify_certificate(cert)
    assert verify_certificate(sparse_certify_right(GapSet(10), F(1, 2), 4))


def test_shallow_depth_is_refused():
    with pytest.raises(DepthError, match="larger depth"):
        sparse_certify_right(GapSet(F(3, 2)), F(1, 100), 3)


@pytest.mark.parametrize("c,eps", GRID)
def test_grid_certificates(c, eps):
    cert = certify_with_retry(c, eps)
    assert verify_certificate(cert).ok
    if (c, eps) in FROZEN_H:
        assert cert.h == FROZEN_H[(c, eps)]
    assert cert.bad_span_bound * cert.h < 1
    assert loads(dumps(cert)) == cert
    muts = certificate_mutations(cert)
    assert len(muts) == 20
    for name, bad in muts:
        assert bad != cert, name
        v = verify_certificate(bad)
        assert not v.ok and v.reason, name


def test_spec_mutations():
    cert = sparse_certify_right(GapSet(2), F(1, 10), 6)
    assert not verify_certificate(cert.mutate(h=cert.h * 2)).ok
    past_span = verify_certificate(cert.mutate(h=2 / cert.bad_span_bound))
    assert not past_span.ok and past_span.reason.startswith("beta* h")
    last = cert.good_regions[-1]
    b_n = F(1, 2 ** (last.level**2))
    moved = cert.mutate(good_regions=cert.good_regions[:-1] + (last.__class__(last.level, last.lo, b_n, last.shape),))
    assert not verify_certificate(moved).ok


def test_region_endpoints_below_eps():
    cert = sparse_certify_right(GapSet(2), F(1, 10), 6)
    for g in cert.good_regions:
        for y in (g.lo, g.hi):
            assert GapSet(2).ratio_bounds(y, g.level + 4).hi < F(1, 10)
            assert _ratio_upper(F(2), y, g.level + 2) < F(1, 10)


@pytest.mark.parametrize("c,eps", [(F(2), F(1, 10)), (F(3, 2), F(1, 2)), (F(10), F(1, 100))])
def test_certificate_entails_definition(c, eps):
    """Brute-force the definition on a grid of (alpha, beta) inside (0, h)."""
    G = GapSet(c)
    cert = certify_with_retry(c, eps)
    h = cert.h
    pts = sorted({g.lo for g in cert.good_regions} | {g.hi for g in cert.good_regions}
                 | {G.a(n) for n in range(1, cert.depth + 1)} | {G.b(n) for n in range(1, cert.depth + 1)})
    lows = [y for y in pts if 0 < y < h]
    for alpha in lows:
        for beta in [y for y in pts if alpha < y <= h] + [h]:
            if not alpha < h * beta:
                continue
            good = [g for g in cert.good_regions if alpha < g.hi and g.lo < beta]
            assert good, (alpha, beta)
            g = good[0]
            y = max(g.lo, alpha + (min(g.hi, beta) - max(g.lo, alpha)) / 2)
            y = min(y, (min(g.hi, beta) + max(g.lo, alpha)) / 2)
            assert G.ratio_bounds(y, cert.depth + 2).hi < eps


def test_certified_set_matches_density_bounds():
    for c in (F(3, 2), F(2), F(10)):
        cert = certify_with_retry(c, F(1, 10))
        d = gap_density_bounds(GapSet(c), cert.depth)
        assert d.lower.contains(0) and d.upper.hi < 1


def test_file_format_errors():
    cert = sparse_certify_right(GapSet(2), F(1, 10), 6)
    text = dumps(cert)
    assert text.startswith("format: isparse-sparseness-certificate\nversion: 1\n")
    with pytest.raises(CertificateFormatError):
        loads(text.replace("end\n", ""))
    with pytest.raises(CertificateFormatError):
        loads(text.replace("c: 2/1\n", ""))
    with pytest.raises(CertificateFormatError):
        loads("format: other\nend\n")


def test_falsify_examples():
    w = i_sparse_falsify(UNIT, 0, Ideal.DENSITY_ZERO)
    assert w is not None and w.B == normalize([(-1, 0)])
    for I in Ideal:
        assert i_sparse_falsify(IntervalSet.empty(), F(5, 3), I) is None
        assert i_sparse_falsify(normalize([(2, 3)]), 0, I, trials=500, seed=7) is None


def test_falsify_gap_set_is_not_claimed_sparse_or_not():
    # the gap set at 0 is never a density point, and neither is it made one by B
    assert i_sparse_falsify(GapSet(2), 0, Ideal.DENSITY_ZERO, trials=50) is None
    U = GapUnion(GapSet(2), normalize([(2, 3)]))
    assert i_sparse_falsify(U, 0, Ideal.FIN, trials=50) is None


@settings(max_examples=40, deadline=None)
@given(interval_sets, rationals, st.sampled_from(list(Ideal)), st.integers(0, 1000))
def test_density_zero_never_falsified(A, x, I, seed):
    w = i_sparse_falsify(A, x, I, trials=60, seed=seed)
    if classify_point_i_density(A, x, I) is PointDensity.ZERO:
        assert w is None
    else:
        assert w is not None


@given(interval_sets, interval_sets, rationals)
def test_sparse_closed_under_subsets_and_unions(X, Y, p):
    if sparse_check_interval_set(Y, p):
        assert sparse_check_interval_set(X & Y, p)
        if sparse_check_interval_set(X, p):
            assert sparse_check_interval_set(X | Y, p)


def test_sparse_interior_examples():
    assert sparse_interior(UNIT) == UNIT
    assert sparse_interior(IntervalSet.empty()) == IntervalSet.empty()
    two = normalize([(0, 1), (2, 3)])
    assert measure(two - sparse_interior(two)) == 0


@given(interval_sets)
def test_sparse_interior_properties(A):
    G = sparse_interior(A)
    assert G.issubset(A) and measure(A - G) == 0
