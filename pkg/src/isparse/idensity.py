"""Ideal densities: window families, ratio sequences and certified bounds.

Upper and lower I-densities take a supremum/infimum over *every* window
family about ``p`` whose windows shrink on a filter set.  That is not
computable in general, so for gap sets each explicit family only yields a
one-sided bound: a lower bound on the upper I-density and an upper bound
on the lower I-density.  For finite interval unions the answer is fixed by
which sides of ``p`` the set fills.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .classical import Bounds, GapSet, GapUnion, as_gap_union
from .indexsets import EMPTY, Finite, Ideal, IndexSet
from .sequences import StepSequence, i_liminf, i_limsup
from .sets import (
    Interval,
    IntervalSet,
    RationalLike,
    adjacency,
    as_rational,
    intersect,
    local_radius,
    measure,
    normalize,
)

RealSet = Union[IntervalSet, GapSet, GapUnion]

# Interval-set prefixes longer than this fall back to the trivial tail.
MAX_EXACT_PREFIX = 200_000


class Rule(enum.Enum):
    SYMMETRIC = "sym"
    RIGHT_GEOMETRIC = "rgeom"
    LEFT_HARMONIC = "lharm"
    RIGHT_HARMONIC = "rharm"


@dataclass(frozen=True)
class WindowFamily:
    """A sequence of closed windows ``J_1, J_2, ...`` about ``center``.

    Index ``n`` uses, in order of precedence: the exception window when
    ``n`` is in ``exception_set``; ``prefix[n-1]`` when ``n <= len(prefix)``;
    otherwise the base rule.  Base rules:

    * ``sym``: ``[p - 1/(2n+2), p + 1/(2n+2)]``
    * ``rgeom``: ``[p, p + c**-(n*n)]``
    * ``rharm`` / ``lharm``: ``[p, p + 1/(n+1)]`` / ``[p - 1/(n+1), p]``
    """

    center: Fraction
    rule: Rule = Rule.SYMMETRIC
    c: Fraction | None = None
    prefix: tuple[Interval, ...] = ()
    exception_set: IndexSet | None = None
    exception_window: Interval | None = None

    def __post_init__(self):
        object.__setattr__(self, "center", as_rational(self.center))
        object.__setattr__(self, "rule", Rule(self.rule))
        if self.rule is Rule.RIGHT_GEOMETRIC:
            if self.c is None or as_rational(self.c) <= 1:
                raise ValueError("rgeom windows need c > 1")
            object.__setattr__(self, "c", as_rational(self.c))
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if (self.exception_set is None) != (self.exception_window is None):
            raise ValueError("exception set and exception window go together")
        for J in self.prefix + ((self.exception_window,) if self.exception_window else ()):
            if not J.contains(self.center):
                raise ValueError(f"window {J!r} does not contain {self.center}")
            if J.length == 0:
                raise ValueError(f"window {J!r} has zero length")

    @classmethod
    def symmetric(cls, p: RationalLike, **kw) -> "WindowFamily":
        return cls(as_rational(p), Rule.SYMMETRIC, **kw)

    @classmethod
    def right_geometric(cls, p: RationalLike, c: RationalLike, **kw) -> "WindowFamily":
        return cls(as_rational(p), Rule.RIGHT_GEOMETRIC, as_rational(c), **kw)

    def base_length(self, n: int) -> Fraction:
        if self.rule is Rule.RIGHT_GEOMETRIC:
            return 1 / self.c ** (n * n)
        return Fraction(1, n + 1)

    def base_window(self, n: int) -> Interval:
        p, L = self.center, self.base_length(n)
        if self.rule is Rule.SYMMETRIC:
            return Interval(p - L / 2, p + L / 2)
        if self.rule is Rule.LEFT_HARMONIC:
            return Interval(p - L, p)
        return Interval(p, p + L)

    def is_exceptional(self, n: int) -> bool:
        return self.exception_set is not None and n in self.exception_set

    def window(self, n: int) -> Interval:
        if n < 1:
            raise IndexError(n)
        if self.is_exceptional(n):
            return self.exception_window
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.base_window(n)

    def base_threshold(self) -> int:
        """Least ``t`` with ``0 < |base J_n| < 1/n`` for every ``n >= t``."""
        if self.rule is not Rule.RIGHT_GEOMETRIC:
            return 1  # 1/(n+1) < 1/n always
        c = self.c
        n = 1
        # c**(n*n) > n together with c**(2n+1) >= (n+1)/n propagates to n+1
        while not (c ** (n * n) > n and c ** (2 * n + 1) * n >= n + 1):
            n += 1
        return n

    def shrink_set(self) -> IndexSet:
        """``{n : 0 < |J_n| < 1/n}`` as an index-set expression."""
        X = self.exception_set if self.exception_set is not None else EMPTY
        horizon = max(self.base_threshold(), len(self.prefix) + 1)
        bad = Finite(
            n for n in range(1, horizon)
            if not self.is_exceptional(n) and not self.window(n).length * n < 1
        )
        good = ~X - bad
        if self.exception_window is not None:
            L = self.exception_window.length
            good = good | (X & Finite(n for n in range(1, int(1 / L) + 2) if L * n < 1))
        return good

    def __repr__(self) -> str:
        head = f"{self.rule.value}(p={self.center}" + (f",c={self.c}" if self.c is not None else "")
        tail = ""
        if self.prefix:
            tail += "; prefix " + ",".join(repr(J) for J in self.prefix)
        if self.exception_set is not None:
            tail += f"; except {self.exception_set!r} -> {self.exception_window!r}"
        return head + tail + ")"


def validate_window_family(W: WindowFamily, I: Ideal) -> bool:
    return I.filter_member(W.shrink_set())


@dataclass(frozen=True)
class RatioSequence:
    """Enclosures of ``x_n = |E & J_n| / |J_n|``.

    ``prefix[n-1]`` covers index ``n`` for ``n <= len(prefix)`` (whatever
    window that index uses); ``tail`` covers every non-exceptional index
    past the prefix and ``exceptional`` every exceptional one.
    """

    source: object
    family: WindowFamily
    prefix: tuple[Bounds, ...]
    tail: Bounds
    exceptional: Bounds | None = None

    @property
    def values(self) -> list[Fraction]:
        """Lower ends of the prefix; exact values for interval-set sources."""
        return [b.lo for b in self.prefix]

    def bounds(self, n: int) -> Bounds:
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        if self.family.is_exceptional(n):
            return self.exceptional
        return self.tail

    def step_sequences(self) -> tuple[StepSequence, StepSequence]:
        """Pointwise lower and upper step sequences sandwiching ``x_n``."""
        return self._bridge("lo"), self._bridge("hi")

    def _bridge(self, end: str) -> StepSequence:
        exc = {n: getattr(b, end) for n, b in enumerate(self.prefix, start=1)}
        X = self.family.exception_set
        kw = {}
        if X is not None and self.exceptional is not None:
            value = getattr(self.exceptional, end)
            if X.is_finite():
                exc.update({n: value for n in X.elements() if n > len(self.prefix)})
            else:
                kw = dict(override_set=X, override_values=(value,))
        return StepSequence(1, (getattr(self.tail, end),), exc, **kw)

    def i_limsup(self, I: Ideal) -> Bounds:
        lo, hi = self.step_sequences()
        return Bounds(i_limsup(lo, I), i_limsup(hi, I))

    def i_liminf(self, I: Ideal) -> Bounds:
        lo, hi = self.step_sequences()
        return Bounds(i_liminf(lo, I), i_liminf(hi, I))


def _interval_ratio(E: IntervalSet, J: Interval) -> Fraction:
    return measure(intersect(E, normalize([J]))) / J.length


def _settle_index(W: WindowFamily, radius: Fraction | None) -> int:
    """First base index whose window, and all later ones, fit inside the radius."""
    if radius is None:
        return 1
    n = 1
    if W.rule is Rule.RIGHT_GEOMETRIC:
        while W.base_length(n) > radius:
            n += 1
        return n
    # reach is 1/(2n+2) for sym and 1/(n+1) otherwise
    k = 2 if W.rule is Rule.SYMMETRIC else 1
    q = 1 / (k * radius)
    return max(1, -(-q.numerator // q.denominator) - 1)


def _settled_value(W: WindowFamily, right: bool, left: bool) -> Fraction:
    r, l = Fraction(int(right)), Fraction(int(left))
    if W.rule is Rule.SYMMETRIC:
        return (r + l) / 2
    if W.rule is Rule.LEFT_HARMONIC:
        return l
    return r


def _interval_ratio_sequence(E: IntervalSet, W: WindowFamily, N: int) -> RatioSequence:
    p = W.center
    settle = _settle_index(W, local_radius(E, p))
    depth = max(N, len(W.prefix), settle - 1)
    exceptional = None
    if W.exception_window is not None:
        exceptional = Bounds.exact(_interval_ratio(E, W.exception_window))
    if depth > MAX_EXACT_PREFIX:
        depth = max(N, len(W.prefix))
        tail = Bounds(0, 1)
    else:
        tail = Bounds.exact(_settled_value(W, *adjacency(E, p)))
    prefix = tuple(Bounds.exact(_interval_ratio(E, W.window(n))) for n in range(1, depth + 1))
    return RatioSequence(E, W, prefix, tail, exceptional)


def _gap_ratio_sequence(E: GapUnion, W: WindowFamily, N: int, truncation: int) -> RatioSequence:
    def enclose(J: Interval) -> Bounds:
        m = E.measure_bounds(J, truncation)
        return Bounds(m.lo / J.length, m.hi / J.length).clip()

    depth = max(N, len(W.prefix))
    prefix = tuple(enclose(W.window(n)) for n in range(1, depth + 1))
    exceptional = enclose(W.exception_window) if W.exception_window is not None else None
    tail = Bounds(0, 1)
    G = E.gap
    radius = local_radius(E.extra, 0)
    settled = radius is None or W.base_length(depth + 1) <= radius
    if W.center == 0 and W.rule is Rule.RIGHT_GEOMETRIC and W.c == G.c and settled:
        if adjacency(E.extra, 0)[0]:
            tail = Bounds.exact(1)
        else:
            # windows [0, b_n]: r(b_n) lies in [1 - 1/c, 1 - 1/c + c**-(2n+1)]
            floor = 1 - 1 / G.c
            tail = Bounds(floor, floor + 1 / G.c ** (2 * depth + 3)).clip()
    return RatioSequence(E, W, prefix, tail, exceptional)


def ratio_sequence(E: RealSet, W: WindowFamily, N: int, truncation: int | None = None) -> RatioSequence:
    """Exact (interval sets) or enclosed (gap sets) window ratios.

    ``N`` is the minimum prefix length.  For interval sets the prefix is
    extended until the windows settle inside the set's local picture at
    the centre, after which the tail is exact.  For gap sets ``truncation``
    (default ``N``) is the block depth used for the prefix enclosures.
    """
    if isinstance(E, IntervalSet):
        return _interval_ratio_sequence(E, W, N)
    return _gap_ratio_sequence(as_gap_union(E), W, N, N if truncation is None else truncation)


class PointDensity(enum.Enum):
    ONE = "I-density 1"
    ZERO = "I-density 0"
    RIGHT_ONE_LEFT_ZERO = "right-1/left-0"
    RIGHT_ZERO_LEFT_ONE = "right-0/left-1"
    BOUNDARY_HALF = "boundary-half"  # never produced for a canonical set


def classify_point_i_density(E: IntervalSet, p: RationalLike, I: Ideal | None = None) -> PointDensity:
    """Exact and ideal-independent for finite unions.

    On a filter set every valid window has length below ``1/n`` and so
    eventually sits inside the local picture at ``p``; only the two
    adjacency flags matter.
    """
    right, left = adjacency(E, p)
    if right and left:
        return PointDensity.ONE
    if not right and not left:
        return PointDensity.ZERO
    return PointDensity.RIGHT_ONE_LEFT_ZERO if right else PointDensity.RIGHT_ZERO_LEFT_ONE


def exact_i_densities(E: IntervalSet, p: RationalLike) -> tuple[Fraction, Fraction]:
    """``(upper, lower)`` I-densities of a finite union at ``p``.

    One-sided windows reach whichever side is better (resp. worse), so the
    upper value is ``max`` of the adjacency flags and the lower ``min``.
    """
    right, left = adjacency(E, p)
    return Fraction(int(right or left)), Fraction(int(right and left))


@dataclass(frozen=True)
class FamilyResult:
    family: WindowFamily
    limsup: Bounds
    liminf: Bounds


@dataclass(frozen=True)
class IDensityEnclosure:
    """Direction-tagged bounds on the upper and lower I-densities.

    ``upper_lower_bound`` is certified ``<=`` the upper I-density and
    ``lower_upper_bound`` is certified ``>=`` the lower I-density.  The
    ``exact_*`` fields are filled only when the value is known outright.
    """

    point: Fraction
    ideal: Ideal
    upper_lower_bound: Fraction
    lower_upper_bound: Fraction
    exact_upper: Fraction | None = None
    exact_lower: Fraction | None = None
    families: tuple[FamilyResult, ...] = field(default=())

    @property
    def value(self) -> Fraction | None:
        """The I-density itself when both sides are pinned and agree."""
        if self.exact_upper is not None and self.exact_upper == self.exact_lower:
            return self.exact_upper
        return None


def i_density_enclosure(
    E: RealSet, p: RationalLike, I: Ideal, families: Sequence[WindowFamily], N: int = 8
) -> IDensityEnclosure:
    p = as_rational(p)
    if not families:
        raise ValueError("at least one window family is required")
    results = []
    for W in families:
        if W.center != p:
            raise ValueError(f"family {W!r} is not centred at {p}")
        if not validate_window_family(W, I):
            raise ValueError(f"family {W!r} does not shrink on a filter set of {I}")
        seq = ratio_sequence(E, W, N)
        results.append(FamilyResult(W, seq.i_limsup(I), seq.i_liminf(I)))
    upper = max(r.limsup.lo for r in results)
    lower = min(r.liminf.hi for r in results)
    exact_upper = exact_lower = None
    if isinstance(E, IntervalSet):
        exact_upper, exact_lower = exact_i_densities(E, p)
    return IDensityEnclosure(p, I, upper, lower, exact_upper, exact_lower, tuple(results))


class Status(enum.Enum):
    DENSITY_POINT = "density-point"
    NOT_DENSITY_POINT = "not-density-point"


def density_point_status(E: RealSet, p: RationalLike) -> Status:
    """Whether ``p`` is an I-density point of ``E`` (for either ideal).

    At ``p = 0`` a gap-set union is a density point only if its interval
    part fills a two-sided neighbourhood: otherwise either the left
    harmonic windows see nothing, or windows ``[0, b_n]`` see the gap-set
    ratio, which stays at most ``1 - 1/c + c**-(2n+1) < 1``.
    """
    p = as_rational(p)
    if not isinstance(E, IntervalSet):
        E = as_gap_union(E)
        model = E.local_model(p)
        if model is None:
            right, left = adjacency(E.extra, p)
            return Status.DENSITY_POINT if right and left else Status.NOT_DENSITY_POINT
        E = model
    return Status.DENSITY_POINT if classify_point_i_density(E, p) is PointDensity.ONE else Status.NOT_DENSITY_POINT
