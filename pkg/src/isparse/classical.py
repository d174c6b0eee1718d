"""Classical one-sided densities, the density-point operator, and gap sets.

A gap set is the union over n >= 1 of the open intervals
``(c**-(n*n + 1), c**-(n*n))``: blocks that shrink super-exponentially
towards 0, each a fixed fraction ``1 - 1/c`` of the span ``(0, b_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .sets import (
    Interval,
    IntervalSet,
    RationalLike,
    adjacency,
    as_rational,
    intersect,
    measure,
    normalize,
)


@dataclass(frozen=True)
class Bounds:
    """Certified enclosure ``lo <= true value <= hi``."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value: RationalLike) -> "Bounds":
        return cls(value, value)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, value: RationalLike) -> bool:
        return self.lo <= as_rational(value) <= self.hi

    def issubset(self, other: "Bounds") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def clip(self, lo: RationalLike = 0, hi: RationalLike = 1) -> "Bounds":
        lo, hi = as_rational(lo), as_rational(hi)
        return Bounds(min(max(self.lo, lo), hi), max(min(self.hi, hi), lo))

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class GapSet:
    c: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", as_rational(self.c))
        if self.c <= 1:
            raise ValueError(f"gap set needs c > 1, got {self.c}")

    def b(self, n: int) -> Fraction:
        return 1 / self.c ** (n * n)

    def a(self, n: int) -> Fraction:
        return self.b(n) / self.c

    def block(self, n: int) -> Interval:
        return Interval(self.a(n), self.b(n))

    def truncate(self, N: int) -> IntervalSet:
        return normalize(self.block(n) for n in range(1, N + 1))

    def tail_measure_bound(self, N: int) -> Fraction:
        # every block past N sits inside (0, b_{N+1})
        return self.b(N + 1)

    def measure_bounds(self, J: Interval, N: int) -> Bounds:
        """Enclosure of the measure of ``G`` inside ``J`` from depth ``N``."""
        window = normalize([J])
        known = measure(intersect(self.truncate(N), window))
        slack = measure(intersect(normalize([(0, self.b(N + 1))]), window))
        return Bounds(known, known + slack)

    def ratio_bounds(self, y: RationalLike, N: int) -> Bounds:
        """Enclosure of ``measure(G & (0, y)) / y`` from depth ``N``."""
        y = as_rational(y)
        if y <= 0:
            raise ValueError("ratio needs y > 0")
        m = self.measure_bounds(Interval(0, y), N)
        return Bounds(m.lo / y, m.hi / y).clip()

    def __repr__(self) -> str:
        return f"gapset(c={self.c})"


@dataclass(frozen=True)
class GapUnion:
    """A gap set together with a finite interval union, ``gap | extra``."""

    gap: GapSet
    extra: IntervalSet = IntervalSet()

    def truncate(self, N: int) -> IntervalSet:
        return self.gap.truncate(N) | self.extra

    def measure_bounds(self, J: Interval, N: int) -> Bounds:
        window = normalize([J])
        known = measure(intersect(self.truncate(N), window))
        unseen = normalize([(0, self.gap.b(N + 1))]) - self.extra
        return Bounds(known, known + measure(intersect(unseen, window)))

    def local_model(self, p: RationalLike) -> IntervalSet | None:
        """An interval set equal to this one near ``p``; ``None`` at ``p = 0``.

        Away from 0 only finitely many blocks come close to ``p``.
        """
        p = as_rational(p)
        if p == 0:
            return None
        k = 1
        while self.gap.b(k + 1) > abs(p) / 2:
            k += 1
        return self.truncate(k)

    def __or__(self, other: IntervalSet) -> "GapUnion":
        return GapUnion(self.gap, self.extra | other)

    def __repr__(self) -> str:
        if not self.extra:
            return repr(self.gap)
        return f"{self.gap!r} u {self.extra!r}"


def as_gap_union(E) -> GapUnion:
    if isinstance(E, GapUnion):
        return E
    if isinstance(E, GapSet):
        return GapUnion(E)
    raise TypeError(f"not a gap set: {E!r}")


def window_ratio(E: IntervalSet, J: Interval) -> Fraction:
    if J.length == 0:
        raise ValueError(f"zero-length window {J!r}")
    return measure(intersect(E, normalize([J]))) / J.length


class OneSidedDensities(NamedTuple):
    right_upper: Fraction
    right_lower: Fraction
    left_upper: Fraction
    left_lower: Fraction


def one_sided_densities(E: IntervalSet, p: RationalLike) -> OneSidedDensities:
    # On each side p is eventually inside a block or inside a gap.
    right, left = adjacency(E, p)
    r, l = Fraction(int(right)), Fraction(int(left))
    return OneSidedDensities(r, r, l, l)


def density(E: IntervalSet, p: RationalLike) -> Fraction | None:
    """Two-sided symmetric-window density, ``None`` when it fails to exist."""
    d = one_sided_densities(E, p)
    if d.right_upper != d.right_lower or d.left_upper != d.left_lower:
        return None
    return (d.right_upper + d.left_upper) / 2


def _breakpoint_segments(E: IntervalSet):
    points = sorted(set(E.endpoints()))
    for lo, hi in zip(points, points[1:]):
        yield lo, hi


def density_point_set(E: IntervalSet) -> IntervalSet:
    """Points of two-sided density 1, rebuilt segment by segment.

    Density is constant on each open segment between consecutive endpoints,
    so each segment is tested at its midpoint.  Endpoints themselves are
    null and are not represented.
    """
    keep = []
    for lo, hi in _breakpoint_segments(E):
        if density(E, (lo + hi) / 2) == 1:
            keep.append((lo, hi))
    return normalize(keep)


class GapDensityBounds(NamedTuple):
    upper: Bounds
    lower: Bounds
    breakpoints: tuple[tuple[int, Bounds, Bounds], ...]


def gap_density_bounds(G: GapSet, N: int, p: RationalLike = 0) -> GapDensityBounds:
    """Enclose the right upper and lower densities of ``G`` at 0.

    ``r(y) = measure(G & (0, y)) / y`` rises on every block and falls on
    every gap, so its extrema over ``(0, b_N]`` sit on the breakpoints.
    Write ``M_n`` for the measure of ``G & (0, b_n)``.  Then

    * ``r(b_n) >= 1 - 1/c`` for every n (block n alone), which is the
      certified lower end of the upper density;
    * ``r(b_m) <= 1 - 1/c + c**-(2m+1)`` and ``r(a_m) <= c**-2m``, both
      decreasing in m, so the depth-N values bound every deeper level.

    The table ``breakpoints`` lists ``(n, r(a_n), r(b_n))`` enclosures for
    ``n <= N`` from the depth-N truncation plus the crude tail bound.
    """
    if as_rational(p) != 0:
        raise ValueError("gap-set densities are only available at p = 0")
    if N < 1:
        raise ValueError(f"depth must be at least 1, got {N}")
    table = tuple(
        (n, G.ratio_bounds(G.a(n), N), G.ratio_bounds(G.b(n), N)) for n in range(1, N + 1)
    )
    floor = 1 - 1 / G.c
    at_bN = table[-1][2]
    at_aN = table[-1][1]
    # floor holds at every b_n, so it also holds for the limsup
    upper = Bounds(floor, max(at_bN.hi, floor)).clip()
    lower = Bounds(0, at_aN.hi).clip()
    return GapDensityBounds(upper, lower, table)


def complement_density_bounds(G: GapSet, N: int) -> GapDensityBounds:
    """Right upper/lower densities of the complement of ``G`` at 0."""
    d = gap_density_bounds(G, N)
    table = tuple(
        (n, Bounds(1 - ra.hi, 1 - ra.lo), Bounds(1 - rb.hi, 1 - rb.lo)) for n, ra, rb in d.breakpoints
    )
    return GapDensityBounds(
        Bounds(1 - d.lower.hi, 1 - d.lower.lo), Bounds(1 - d.upper.hi, 1 - d.upper.lo), table
    )
