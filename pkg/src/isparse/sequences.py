"""Finitely-valued step sequences and their ideal limit superior/inferior.

A :class:`StepSequence` assigns to each index ``n >= 1``:

1. an explicit exception value if ``n`` is listed, else
2. the override value for ``n mod m`` if ``n`` lies in the override set, else
3. the class value for ``n mod m``.

The override set must have density zero.  Every level set
``{k : x_k > b}`` is then a finite boolean combination of residue
classes, the override set and a finite set, so it is an :class:`IndexSet`
and ideal membership of it is decidable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .indexsets import (
    EMPTY,
    NATURALS,
    Finite,
    Ideal,
    IndexSet,
    residue_class,
    union_all,
)
from .sets import RationalLike, as_rational

NEG_INF = -math.inf
POS_INF = math.inf


class IncompatibleOverride(ValueError):
    """Raised when two sequences override on different index sets."""


def _table(values, m: int) -> tuple[Fraction, ...]:
    if isinstance(values, (Fraction, int, str)):
        return (as_rational(values),) * m
    values = tuple(as_rational(v) for v in values)
    if len(values) != m:
        raise ValueError(f"expected {m} residue values, got {len(values)}")
    return values


@dataclass(frozen=True)
class StepSequence:
    modulus: int
    class_values: tuple[Fraction, ...]
    exceptions: Mapping[int, Fraction] = field(default_factory=dict)
    override_set: IndexSet | None = None
    override_values: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "class_values", _table(self.class_values, self.modulus))
        exc = {int(k): as_rational(v) for k, v in dict(self.exceptions).items()}
        if any(k < 1 for k in exc):
            raise ValueError("exception indices must be >= 1")
        object.__setattr__(self, "exceptions", dict(sorted(exc.items())))
        if self.override_set is None:
            object.__setattr__(self, "override_values", None)
        else:
            if self.override_values is None:
                raise ValueError("override set given without values")
            if self.override_set.density != 0:
                raise ValueError(f"override set {self.override_set!r} must have density zero")
            object.__setattr__(self, "override_values", _table(self.override_values, self.modulus))

    @classmethod
    def constant(cls, v: RationalLike) -> "StepSequence":
        return cls(1, (as_rational(v),))

    @classmethod
    def periodic(cls, values: Sequence[RationalLike], **kw) -> "StepSequence":
        """``values[r]`` is used on indices ``n = r (mod len(values))``."""
        return cls(len(values), tuple(values), **kw)

    def __getitem__(self, n: int) -> Fraction:
        if n < 1:
            raise IndexError(n)
        if n in self.exceptions:
            return self.exceptions[n]
        r = n % self.modulus
        if self.override_set is not None and n in self.override_set:
            return self.override_values[r]
        return self.class_values[r]

    def prefix(self, n: int) -> list[Fraction]:
        return [self[k] for k in range(1, n + 1)]

    def values(self) -> list[Fraction]:
        """Distinct values the sequence can take (a superset of its range)."""
        vals = set(self.class_values) | set(self.exceptions.values())
        if self.override_set is not None:
            vals |= set(self.override_values)
        return sorted(vals)

    def level_set(self, pred: Callable[[Fraction], bool]) -> IndexSet:
        """``{k : pred(x_k)}`` as an index-set expression."""
        exc_keys = Finite(self.exceptions)
        hits = Finite(k for k, v in self.exceptions.items() if pred(v))
        parts: list[IndexSet] = [hits]
        m = self.modulus
        base = [residue_class(r, m) for r in range(m) if pred(self.class_values[r])]
        if self.override_set is None:
            parts.append(union_all(base) - exc_keys)
        else:
            S = self.override_set
            parts.append((union_all(base) - S) - exc_keys)
            over = [residue_class(r, m) for r in range(m) if pred(self.override_values[r])]
            parts.append((union_all(over) & S) - exc_keys)
        return union_all(parts)

    @property
    def stabilization_index(self) -> int:
        """From here on no exception applies and the override set is periodic."""
        t = max(self.exceptions, default=0) + 1
        if self.override_set is not None:
            t = max(t, self.override_set.threshold)
        return t

    def restrict(self, modulus: int) -> "StepSequence":
        """Same sequence written over a multiple of the current modulus."""
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        cv = tuple(self.class_values[r % self.modulus] for r in range(modulus))
        ov = None
        if self.override_set is not None:
            ov = tuple(self.override_values[r % self.modulus] for r in range(modulus))
        return StepSequence(modulus, cv, self.exceptions, self.override_set, ov)

    def __repr__(self):
        parts = [f"mod={self.modulus}", "values=" + ",".join(str(v) for v in self.class_values)]
        if self.exceptions:
            parts.append("except " + ",".join(f"{k}->{v}" for k, v in self.exceptions.items()))
        if self.override_set is not None:
            parts.append(f"on {self.override_set!r} -> " + ",".join(str(v) for v in self.override_values))
        return "StepSequence(" + "; ".join(parts) + ")"


def _common_override(x: StepSequence, y: StepSequence) -> IndexSet | None:
    if x.override_set is None:
        return y.override_set
    if y.override_set is None:
        return x.override_set
    if x.override_set == y.override_set or x.override_set.same_set(y.override_set):
        return x.override_set
    raise IncompatibleOverride(
        f"override sets {x.override_set!r} and {y.override_set!r} differ; "
        "rewrite both sequences over one common override set first"
    )


def _lift(s: StepSequence, m: int, S: IndexSet | None) -> tuple[tuple, tuple | None]:
    s = s.restrict(m)
    if S is None:
        return s.class_values, None
    if s.override_set is None:
        return s.class_values, s.class_values
    return s.class_values, s.override_values


def seq_combine(x: StepSequence, y: StepSequence, op: Callable) -> StepSequence:
    m = math.lcm(x.modulus, y.modulus)
    S = _common_override(x, y)
    xc, xo = _lift(x, m, S)
    yc, yo = _lift(y, m, S)
    cv = tuple(op(a, b) for a, b in zip(xc, yc))
    ov = None if S is None else tuple(op(a, b) for a, b in zip(xo, yo))
    exc = {k: op(x[k], y[k]) for k in set(x.exceptions) | set(y.exceptions)}
    return StepSequence(m, cv, exc, S, ov)


def seq_add(x: StepSequence, y: StepSequence) -> StepSequence:
    return seq_combine(x, y, lambda a, b: a + b)


def seq_negate(x: StepSequence) -> StepSequence:
    ov = None if x.override_values is None else tuple(-v for v in x.override_values)
    return StepSequence(
        x.modulus,
        tuple(-v for v in x.class_values),
        {k: -v for k, v in x.exceptions.items()},
        x.override_set,
        ov,
    )


def seq_scale(x: StepSequence, k: RationalLike) -> StepSequence:
    k = as_rational(k)
    ov = None if x.override_values is None else tuple(k * v for v in x.override_values)
    return StepSequence(
        x.modulus, tuple(k * v for v in x.class_values),
        {i: k * v for i, v in x.exceptions.items()}, x.override_set, ov,
    )


def seq_dominates(x: StepSequence, y: StepSequence) -> bool:
    """``x_k <= y_k`` for every k."""
    diff = seq_combine(x, y, lambda a, b: b - a)
    return diff.level_set(lambda v: v < 0).is_empty()


def i_limsup(x: StepSequence, I: Ideal):
    """Ideal limit superior ``sup {b : {k : x_k > b} not in I}``.

    The level set ``{x > b}`` only changes when ``b`` crosses a value of
    ``x``, and it shrinks as ``b`` grows, so the admissible ``b`` form a
    half-line whose supremum is the largest value ``v`` with
    ``{x >= v} not in I``.
    """
    if I.member(NATURALS):
        return NEG_INF  # no admissible b at all
    best = None
    for v in x.values():
        if not I.member(x.level_set(lambda t, v=v: t >= v)):
            best = v
    assert best is not None, "a proper ideal cannot contain every level set"
    return best


def i_liminf(x: StepSequence, I: Ideal):
    """Ideal limit inferior ``inf {a : {k : x_k < a} not in I}``."""
    if I.member(NATURALS):
        return POS_INF
    for v in x.values():
        if not I.member(x.level_set(lambda t, v=v: t <= v)):
            return v
    raise AssertionError("a proper ideal cannot contain every level set")


def i_converges(x: StepSequence, I: Ideal, L: RationalLike, eps: RationalLike) -> bool:
    L, eps = as_rational(L), as_rational(eps)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return I.member(x.level_set(lambda t: abs(t - L) >= eps))


def classical_limsup(x: StepSequence):
    return i_limsup(x, Ideal.FIN)
