"""Random instances for the property suites.

Every generator takes a ``random.Random`` so a suite trial is a pure
function of its seed.  Sizes are kept small on purpose: exceptions and
finite parts stay below :data:`SMALL_INDEX` so a prefix of length 10**4
sees every eventual behaviour.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .indexsets import AP, Finite, Ideal, IndexSet, Squares
from .sequences import StepSequence
from .sets import IntervalSet, normalize

SMALL_INDEX = 2000


def rational(rng: random.Random, lo: int = -4, hi: int = 4, max_den: int = 6) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def value(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def interval_set(rng: random.Random, max_pieces: int = 5) -> IntervalSet:
    pieces = []
    for _ in range(rng.randint(0, max_pieces)):
        lo = rational(rng)
        pieces.append((lo, lo + Fraction(rng.randint(1, 12), rng.randint(1, 6))))
    return normalize(pieces)


def ideal(rng: random.Random) -> Ideal:
    return rng.choice([Ideal.FIN, Ideal.DENSITY_ZERO])


def sparse_squares(rng: random.Random) -> IndexSet:
    """Squares in one residue class mod 4, 5 or 8: at most half of them."""
    m = rng.choice([4, 5, 8])
    return Squares() & AP(rng.randint(1, m), m)


def null_set(rng: random.Random) -> IndexSet:
    """A density-zero index set, possibly finite."""
    kind = rng.randrange(4)
    small = Finite(rng.randint(1, SMALL_INDEX) for _ in range(rng.randint(0, 4)))
    if kind == 0:
        return small
    if kind == 1:
        return Squares()
    if kind == 2:
        return sparse_squares(rng)
    return Squares() | small


def leaf(rng: random.Random, allow_squares: bool) -> tuple[IndexSet, bool]:
    """A random leaf and whether it is a squares leaf."""
    k = rng.randrange(10 if allow_squares else 8)
    if k < 6:
        return AP(rng.randint(1, 12), rng.randint(1, 12)), False
    if k < 8:
        return Finite(rng.randint(1, 50) for _ in range(rng.randint(0, 5))), False
    return sparse_squares(rng), True


def index_set(rng: random.Random, leaves: int | None = None) -> IndexSet:
    """A random expression with at most one (thinned) squares leaf."""
    leaves = leaves or rng.randint(1, 4)
    squares_used = False
    parts = []
    for _ in range(leaves):
        L, sq = leaf(rng, not squares_used)
        squares_used = squares_used or sq
        parts.append(L)
    expr = parts[0]
    for p in parts[1:]:
        op = rng.randrange(4)
        if op == 0:
            expr = expr | p
        elif op == 1:
            expr = expr & p
        elif op == 2:
            expr = expr - p
        else:
            expr = ~expr | p
    return ~expr if rng.random() < 0.2 else expr


def ap_union(rng: random.Random) -> list[AP]:
    return [AP(rng.randint(1, 12), rng.randint(1, 12)) for _ in range(rng.randint(1, 4))]


def step_sequence(rng: random.Random, override: IndexSet | None = None, modulus: int | None = None) -> StepSequence:
    m = modulus or rng.randint(1, 6)
    cv = tuple(value(rng) for _ in range(m))
    exceptions = {rng.randint(1, SMALL_INDEX): value(rng) for _ in range(rng.randint(0, 5))}
    if override is None:
        return StepSequence(m, cv, exceptions)
    ov = tuple(value(rng) for _ in range(m)) if rng.random() < 0.5 else value(rng)
    return StepSequence(m, cv, exceptions, override, ov)


def sequence_pair(rng: random.Random) -> tuple[StepSequence, StepSequence]:
    """Two sequences whose override sets can be combined."""
    shape = rng.randrange(4)
    S = null_set(rng)
    if shape == 0:
        return step_sequence(rng), step_sequence(rng)
    if shape == 1:
        return step_sequence(rng, S), step_sequence(rng)
    if shape == 2:
        return step_sequence(rng), step_sequence(rng, S)
    return step_sequence(rng, S), step_sequence(rng, S)


def nonnegative_like(rng: random.Random, x: StepSequence) -> StepSequence:
    """A sequence with values >= 0 whose override set matches ``x``."""
    m = rng.randint(1, 6)
    cv = tuple(abs(value(rng)) for _ in range(m))
    exceptions = {rng.randint(1, SMALL_INDEX): abs(value(rng)) for _ in range(rng.randint(0, 3))}
    if x.override_set is None:
        return StepSequence(m, cv, exceptions)
    return StepSequence(m, cv, exceptions, x.override_set, tuple(abs(value(rng)) for _ in range(m)))
