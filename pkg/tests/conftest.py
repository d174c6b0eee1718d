from fractions import Fraction

from hypothesis import strategies as st

from isparse import Interval, normalize

rationals = st.builds(Fraction, st.integers(-24, 24), st.integers(1, 6))


@st.composite
def raw_intervals(draw, max_size=5):
    out = []
    for _ in range(draw(st.integers(0, max_size))):
        lo = draw(rationals)
        out.append(Interval(lo, lo + draw(st.builds(Fraction, st.integers(0, 18), st.integers(1, 6)))))
    return out


interval_sets = raw_intervals().map(normalize)


def grid(*collections_of_intervals):
    """Endpoints plus every midpoint between consecutive endpoints, plus outliers."""
    pts = sorted({e for raw in collections_of_intervals for J in raw for e in (J.lo, J.hi)})
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    far = [pts[0] - 1, pts[-1] + 1] if pts else [Fraction(0)]
    return mids + far


def inside(raw, q):
    """Strict membership in the plain union of the raw intervals."""
    return any(J.lo < q < J.hi for J in raw)
