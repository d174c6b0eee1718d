"""Symbolic subsets of the positive integers and the two ideals on them.

An :class:`IndexSet` is a boolean expression over three kinds of leaves:
explicit finite sets, arithmetic progressions ``{a, a+b, a+2b, ...}``, and
the perfect squares.  Past a computable threshold, membership of ``n``
depends only on ``n mod M`` (``M`` the lcm of all progression steps) and on
whether ``n`` is a square.  That makes finiteness, emptiness, equality and
asymptotic density exactly decidable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from typing import Iterable


def _is_square(n: int) -> bool:
    return n >= 1 and math.isqrt(n) ** 2 == n


class IndexSet:
    """Base class for index-set expressions; use the leaf and operator subclasses."""

    def __contains__(self, n: int) -> bool:
        return n >= 1 and self._member(n)

    def _member(self, n: int) -> bool:
        raise NotImplementedError

    def _generic(self, n: int, square: bool) -> bool:
        """Membership of a large ``n`` with the given residue and squareness."""
        raise NotImplementedError

    def _moduli(self) -> set[int]:
        raise NotImplementedError

    def _floor(self) -> int:
        raise NotImplementedError

    def __or__(self, other: "IndexSet") -> "IndexSet":
        return Union(self, other)

    def __and__(self, other: "IndexSet") -> "IndexSet":
        return Intersection(self, other)

    def __invert__(self) -> "IndexSet":
        return Complement(self)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return Intersection(self, Complement(other))

    @cached_property
    def period(self) -> int:
        return reduce(math.lcm, self._moduli(), 1)

    @cached_property
    def threshold(self) -> int:
        """From this index on, membership follows the periodic patterns."""
        return self._floor() + 1

    @cached_property
    def _nonsquare_pattern(self) -> tuple[bool, ...]:
        M = self.period
        return tuple(self._generic(r if r else M, False) for r in range(M))

    @cached_property
    def _square_pattern(self) -> tuple[bool, ...]:
        M = self.period
        return tuple(self._generic(k * k if k else M * M, True) for k in range(M))

    @cached_property
    def density(self) -> Fraction:
        """Exact asymptotic density; squares and finite parts contribute 0."""
        return Fraction(sum(self._nonsquare_pattern), self.period)

    def is_finite(self) -> bool:
        return not any(self._nonsquare_pattern) and not any(self._square_pattern)

    def elements(self) -> list[int]:
        if not self.is_finite():
            raise ValueError(f"{self!r} is infinite")
        return [n for n in range(1, self.threshold) if n in self]

    def is_empty(self) -> bool:
        return self.is_finite() and not self.elements()

    def same_set(self, other: "IndexSet") -> bool:
        return ((self - other) | (other - self)).is_empty()

    def prefix_count(self, n: int) -> int:
        return sum(1 for k in range(1, n + 1) if k in self)


@dataclass(frozen=True, eq=True, repr=False)
class Finite(IndexSet):
    items: frozenset[int]

    def __init__(self, items: Iterable[int] = ()):
        items = frozenset(int(k) for k in items)
        if any(k < 1 for k in items):
            raise ValueError("index sets live in {1, 2, ...}")
        object.__setattr__(self, "items", items)

    def _member(self, n):
        return n in self.items

    def _generic(self, n, square):
        return False

    def _moduli(self):
        return set()

    def _floor(self):
        return max(self.items, default=0)

    def __repr__(self):
        return "{" + ",".join(str(k) for k in sorted(self.items)) + "}"


@dataclass(frozen=True, eq=True, repr=False)
class AP(IndexSet):
    start: int
    step: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise ValueError(f"ap needs start >= 1 and step >= 1, got ({self.start}, {self.step})")

    def _member(self, n):
        return n >= self.start and (n - self.start) % self.step == 0

    def _generic(self, n, square):
        return n % self.step == self.start % self.step

    def _moduli(self):
        return {self.step}

    def _floor(self):
        return self.start

    def intersect(self, other: "AP") -> "AP | None":
        """Intersection of two progressions, solved by CRT; ``None`` if empty."""
        g = math.gcd(self.step, other.step)
        if (other.start - self.start) % g:
            return None
        lcm = self.step // g * other.step
        # solve start_1 + step_1 * t == start_2 (mod step_2)
        t = ((other.start - self.start) // g * pow(self.step // g, -1, other.step // g)) % (other.step // g)
        first = self.start + self.step * t
        floor = max(self.start, other.start)
        if first < floor:
            first += -(-(floor - first) // lcm) * lcm
        return AP(first, lcm)

    def __repr__(self):
        return f"ap({self.start},{self.step})"


@dataclass(frozen=True, eq=True, repr=False)
class Squares(IndexSet):
    def _member(self, n):
        return _is_square(n)

    def _generic(self, n, square):
        return square

    def _moduli(self):
        return set()

    def _floor(self):
        return 0

    def __repr__(self):
        return "squares"


@dataclass(frozen=True, eq=True, repr=False)
class Union(IndexSet):
    left: IndexSet
    right: IndexSet

    def _member(self, n):
        return self.left._member(n) or self.right._member(n)

    def _generic(self, n, square):
        return self.left._generic(n, square) or self.right._generic(n, square)

    def _moduli(self):
        return self.left._moduli() | self.right._moduli()

    def _floor(self):
        return max(self.left._floor(), self.right._floor())

    def __repr__(self):
        return f"({self.left!r} | {self.right!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Intersection(IndexSet):
    left: IndexSet
    right: IndexSet

    def _member(self, n):
        return self.left._member(n) and self.right._member(n)

    def _generic(self, n, square):
        return self.left._generic(n, square) and self.right._generic(n, square)

    def _moduli(self):
        return self.left._moduli() | self.right._moduli()

    def _floor(self):
        return max(self.left._floor(), self.right._floor())

    def __repr__(self):
        return f"({self.left!r} & {self.right!r})"


@dataclass(frozen=True, eq=True, repr=False)
class Complement(IndexSet):
    inner: IndexSet

    def _member(self, n):
        return not self.inner._member(n)

    def _generic(self, n, square):
        return not self.inner._generic(n, square)

    def _moduli(self):
        return self.inner._moduli()

    def _floor(self):
        return self.inner._floor()

    def __repr__(self):
        return f"~{self.inner!r}"


NATURALS = AP(1, 1)
EMPTY = Finite()


def residue_class(r: int, m: int) -> AP:
    """``{n >= 1 : n = r (mod m)}``."""
    r %= m
    return AP(r if r else m, m)


def union_all(sets: Iterable[IndexSet]) -> IndexSet:
    out: IndexSet | None = None
    for s in sets:
        out = s if out is None else Union(out, s)
    return EMPTY if out is None else out


def asymptotic_density(S: IndexSet) -> Fraction:
    return S.density


def union_density_incl_excl(aps: list[AP]) -> Fraction:
    """Density of a union of progressions by inclusion-exclusion.

    Independent of the residue-pattern count in :attr:`IndexSet.density`:
    it only intersects progressions pairwise via :meth:`AP.intersect`.
    """
    total = Fraction(0)

    def walk(i: int, current: AP | None, size: int) -> None:
        nonlocal total
        for j in range(i, len(aps)):
            nxt = aps[j] if current is None else current.intersect(aps[j])
            if nxt is None:
                continue
            total += Fraction((-1) ** size, nxt.step)
            walk(j + 1, nxt, size + 1)

    walk(0, None, 0)
    return total


class Ideal(enum.Enum):
    """The two admissible ideals on the positive integers used here."""

    FIN = "fin"
    DENSITY_ZERO = "d0"

    def member(self, S: IndexSet) -> bool:
        if self is Ideal.FIN:
            return S.is_finite()
        return S.density == 0

    def filter_member(self, S: IndexSet) -> bool:
        return self.member(Complement(S))

    def __str__(self) -> str:
        return self.value


def ideal_member(I: Ideal, S: IndexSet) -> bool:
    return I.member(S)


def filter_member(I: Ideal, S: IndexSet) -> bool:
    return I.filter_member(S)
