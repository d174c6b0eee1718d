"""Exact finite unions of rational intervals, taken modulo Lebesgue-null sets.

Endpoints carry no open/closed flag: two sets that differ on finitely many
points are the same value here.  Touching intervals merge and degenerate
intervals vanish, so every set has exactly one canonical form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings.  Floats are refused."""
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float {value!r}; pass a Fraction or 'p/q' string")
    return Fraction(value)


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"malformed interval: lo={self.lo} > hi={self.hi}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, p: Fraction) -> bool:
        return self.lo <= p <= self.hi

    def translate(self, t: Fraction) -> "Interval":
        return Interval(self.lo + t, self.hi + t)

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


class PointClass(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary-endpoint"
    OUTSIDE = "outside"


def _coerce_interval(item) -> Interval:
    if isinstance(item, Interval):
        return item
    lo, hi = item
    return Interval(lo, hi)


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of closed rational intervals.

    Construct through :func:`normalize` (or :meth:`of`); the constructor
    trusts its input to already be canonical.
    """

    intervals: tuple[Interval, ...] = ()

    @classmethod
    def of(cls, *items) -> "IntervalSet":
        return normalize(items)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __repr__(self) -> str:
        if not self.intervals:
            return "IntervalSet(empty)"
        return "IntervalSet(" + " u ".join(repr(iv) for iv in self.intervals) + ")"

    @property
    def measure(self) -> Fraction:
        return measure(self)

    def endpoints(self) -> list[Fraction]:
        out: list[Fraction] = []
        for iv in self.intervals:
            out.extend((iv.lo, iv.hi))
        return out

    def hull(self) -> Interval | None:
        if not self.intervals:
            return None
        return Interval(self.intervals[0].lo, self.intervals[-1].hi)

    def translate(self, t: RationalLike) -> "IntervalSet":
        t = as_rational(t)
        return IntervalSet(tuple(iv.translate(t) for iv in self.intervals))

    def reflect(self, about: RationalLike = 0) -> "IntervalSet":
        """Mirror image ``x -> 2*about - x``."""
        c = 2 * as_rational(about)
        return IntervalSet(tuple(Interval(c - iv.hi, c - iv.lo) for iv in reversed(self.intervals)))

    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return union(self, other)

    def __and__(self, other: "IntervalSet") -> "IntervalSet":
        return intersect(self, other)

    def __sub__(self, other: "IntervalSet") -> "IntervalSet":
        return difference(self, other)

    def __xor__(self, other: "IntervalSet") -> "IntervalSet":
        return symdiff(self, other)

    def issubset(self, other: "IntervalSet") -> bool:
        return intersect(self, other) == self


def normalize(raw: Iterable) -> IntervalSet:
    """Sweep sorted intervals, merging overlaps and touching neighbours."""
    items = sorted(_coerce_interval(item) for item in raw)
    merged: list[list[Fraction]] = []
    for iv in items:
        if iv.lo == iv.hi:
            continue
        if merged and iv.lo <= merged[-1][1]:
            if iv.hi > merged[-1][1]:
                merged[-1][1] = iv.hi
        else:
            merged.append([iv.lo, iv.hi])
    return IntervalSet(tuple(Interval(lo, hi) for lo, hi in merged))


def measure(E: IntervalSet) -> Fraction:
    return sum((iv.length for iv in E.intervals), Fraction(0))


def _combine(A: IntervalSet, B: IntervalSet, keep) -> IntervalSet:
    # Elementary segments between consecutive breakpoints have constant
    # membership in A and in B; keep(in_a, in_b) decides each one.
    points = sorted(set(A.endpoints()) | set(B.endpoints()))
    pieces = []
    ia = ib = 0
    a, b = A.intervals, B.intervals
    for lo, hi in zip(points, points[1:]):
        while ia < len(a) and a[ia].hi <= lo:
            ia += 1
        while ib < len(b) and b[ib].hi <= lo:
            ib += 1
        in_a = ia < len(a) and a[ia].lo <= lo
        in_b = ib < len(b) and b[ib].lo <= lo
        if keep(in_a, in_b):
            pieces.append((lo, hi))
    return normalize(pieces)


def union(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    return normalize(A.intervals + B.intervals)


def intersect(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    out = []
    i = j = 0
    a, b = A.intervals, B.intervals
    while i < len(a) and j < len(b):
        lo = max(a[i].lo, b[j].lo)
        hi = min(a[i].hi, b[j].hi)
        if lo < hi:
            out.append(Interval(lo, hi))
        if a[i].hi < b[j].hi:
            i += 1
        else:
            j += 1
    return IntervalSet(tuple(out))


def difference(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    return _combine(A, B, lambda in_a, in_b: in_a and not in_b)


def symdiff(A: IntervalSet, B: IntervalSet) -> IntervalSet:
    return _combine(A, B, lambda in_a, in_b: in_a != in_b)


def complement_within(A: IntervalSet, W: Interval) -> IntervalSet:
    """``W \\ A`` as a canonical set."""
    return difference(normalize([W]), A)


def contains_point(E: IntervalSet, p: RationalLike) -> PointClass:
    p = as_rational(p)
    for iv in E.intervals:
        if p == iv.lo or p == iv.hi:
            return PointClass.BOUNDARY
        if iv.lo < p < iv.hi:
            return PointClass.INTERIOR
        if iv.lo > p:
            break
    return PointClass.OUTSIDE


def adjacency(E: IntervalSet, p: RationalLike) -> tuple[bool, bool]:
    """Whether ``E`` fills a right (resp. left) one-sided neighbourhood of ``p``.

    For a finite union one side of ``p`` is eventually all-in or all-out,
    which is what every density computation in this package reduces to.
    """
    p = as_rational(p)
    right = any(iv.lo <= p < iv.hi for iv in E.intervals)
    left = any(iv.lo < p <= iv.hi for iv in E.intervals)
    return right, left


def local_radius(E: IntervalSet, p: RationalLike) -> Fraction | None:
    """Distance from ``p`` to the nearest endpoint of ``E`` other than ``p``.

    Inside ``(p - r, p + r)`` the set looks like a (possibly empty) one- or
    two-sided neighbourhood of ``p``.  ``None`` means no other endpoint at all.
    """
    p = as_rational(p)
    dists = [abs(q - p) for q in E.endpoints() if q != p]
    return min(dists) if dists else None


def parse_intervals(pairs: Sequence[Sequence[RationalLike]]) -> IntervalSet:
    return normalize(Interval(lo, hi) for lo, hi in pairs)
