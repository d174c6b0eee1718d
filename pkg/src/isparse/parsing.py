"""Recursive-descent parser for the command-line mini-language.

The grammar is documented in ``docs/grammar.md``.  Every entry point takes
the whole text and raises :class:`ParseError` (with a character offset and
the tokens that would have been accepted) on anything it cannot consume.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .classical import GapSet, GapUnion
from .idensity import Rule, WindowFamily
from .indexsets import AP, NATURALS, Finite, Ideal, IndexSet, Squares
from .sequences import StepSequence
from .sets import Interval, IntervalSet, normalize

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>->|[\[\](),;:=|&~{}/\-.]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = expected
        detail = f" (expected {' or '.join(expected)})" if expected else ""
        super().__init__(f"at position {position}: {message}{detail}")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, value: str) -> bool:
        kind, v, _ = self.tok
        return v == value and kind != "eof"

    def accept(self, value: str) -> bool:
        if self.peek(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            self.error(f"unexpected {self.describe()}", value)

    def error(self, message: str, *expected: str):
        raise ParseError(message, self.tok[2], tuple(repr(e) for e in expected))

    def describe(self) -> str:
        kind, v, _ = self.tok
        return "end of input" if kind == "eof" else repr(v)

    def name(self) -> str:
        kind, v, _ = self.tok
        if kind != "name":
            self.error(f"unexpected {self.describe()}", "a name")
        self.i += 1
        return v

    def integer(self) -> int:
        kind, v, _ = self.tok
        if kind != "num":
            self.error(f"unexpected {self.describe()}", "an integer")
        self.i += 1
        return int(v)

    def rational(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        whole = self.integer()
        if self.accept("/"):
            den = self.integer()
            if den == 0:
                self.error("zero denominator")
            return sign * Fraction(whole, den)
        if self.accept("."):
            kind, v, _ = self.tok
            if kind != "num":
                self.error(f"unexpected {self.describe()}", "decimal digits")
            self.i += 1
            return sign * (whole + Fraction(int(v), 10 ** len(v)))
        return Fraction(sign * whole)

    def finish(self):
        if self.tok[0] != "eof":
            self.error(f"trailing input {self.describe()}", "end of input")

    # sets -------------------------------------------------------------
    def interval(self) -> Interval:
        start = self.tok[2]
        self.expect("[")
        lo = self.rational()
        self.expect(",")
        hi = self.rational()
        self.expect("]")
        if lo > hi:
            raise ParseError(f"malformed interval [{lo}, {hi}]", start)
        return Interval(lo, hi)

    def real_set(self):
        gap = None
        pieces: list[Interval] = []
        while True:
            if self.peek("["):
                pieces.append(self.interval())
            elif self.accept("empty"):
                pass
            elif self.peek("gapset"):
                start = self.tok[2]
                g = self.gapset()
                if gap is not None and g != gap:
                    raise ParseError("at most one gap set per expression", start)
                gap = g
            else:
                self.error(f"unexpected {self.describe()}", "[", "gapset", "empty")
            if not (self.accept("u") or self.accept("|")):
                break
        extra = normalize(pieces)
        if gap is None:
            return extra
        return GapUnion(gap, extra) if extra else gap

    def gapset(self) -> GapSet:
        self.expect("gapset")
        self.expect("(")
        self.expect("c")
        self.expect("=")
        start = self.tok[2]
        c = self.rational()
        self.expect(")")
        if c <= 1:
            raise ParseError(f"gap set needs c > 1, got {c}", start)
        return GapSet(c)

    # index sets -------------------------------------------------------
    def index_set(self) -> IndexSet:
        left = self.index_term()
        while self.accept("|"):
            left = left | self.index_term()
        return left

    def index_term(self) -> IndexSet:
        left = self.index_factor()
        while True:
            if self.accept("&"):
                left = left & self.index_factor()
            elif self.accept("-"):
                left = left - self.index_factor()
            else:
                return left

    def index_factor(self) -> IndexSet:
        if self.accept("~"):
            return ~self.index_factor()
        if self.accept("("):
            inner = self.index_set()
            self.expect(")")
            return inner
        if self.accept("{"):
            items = []
            if not self.peek("}"):
                items.append(self._positive())
                while self.accept(","):
                    items.append(self._positive())
            self.expect("}")
            return Finite(items)
        if self.accept("squares"):
            return Squares()
        if self.accept("nat"):
            return NATURALS
        if self.accept("ap"):
            self.expect("(")
            a = self._positive()
            self.expect(",")
            b = self._positive()
            self.expect(")")
            return AP(a, b)
        self.error(f"unexpected {self.describe()}", "ap", "squares", "nat", "{", "(", "~")

    def _positive(self) -> int:
        start = self.tok[2]
        n = self.integer()
        if n < 1:
            raise ParseError("indices start at 1", start)
        return n

    # sequences ----------------------------------------------------------
    def sequence(self) -> StepSequence:
        if self.accept("const"):
            self.expect("(")
            v = self.rational()
            self.expect(")")
            return StepSequence.constant(v)
        self.expect("steps")
        self.expect("(")
        self.expect("mod")
        self.expect("=")
        start = self.tok[2]
        m = self.integer()
        if m < 1:
            raise ParseError("modulus must be positive", start)
        self.expect(";")
        values: dict[int, Fraction] = {}
        while True:
            start = self.tok[2]
            r = self.integer()
            self.expect(":")
            if r >= m or r in values:
                raise ParseError(f"residue {r} repeated or not below {m}", start)
            values[r] = self.rational()
            if not self.accept(","):
                break
        if len(values) != m:
            raise ParseError(f"need a value for every residue 0..{m - 1}", self.tok[2])
        exceptions: dict[int, Fraction] = {}
        override = None
        while self.accept(";"):
            if self.accept("except"):
                while True:
                    k = self._positive()
                    self.expect("->")
                    exceptions[k] = self.rational()
                    if not self.accept(","):
                        break
            elif self.accept("on"):
                start = self.tok[2]
                S = self.index_set()
                self.expect("->")
                vals = [self.rational()]
                while self.accept(","):
                    vals.append(self.rational())
                if len(vals) not in (1, m):
                    raise ParseError(f"override needs 1 or {m} values", start)
                if S.density != 0:
                    raise ParseError("override set must have density zero", start)
                override = (S, tuple(vals) if len(vals) == m else vals[0])
            else:
                self.error(f"unexpected {self.describe()}", "except", "on")
        self.expect(")")
        cv = tuple(values[r] for r in range(m))
        if override is None:
            return StepSequence(m, cv, exceptions)
        return StepSequence(m, cv, exceptions, override[0], override[1])

    # window families ------------------------------------------------------
    def family(self) -> WindowFamily:
        start = self.tok[2]
        rule_name = self.name()
        try:
            rule = Rule(rule_name)
        except ValueError:
            raise ParseError(f"unknown window rule {rule_name!r}", start, ("'sym'", "'rgeom'", "'rharm'", "'lharm'"))
        self.expect("(")
        self.expect("p")
        self.expect("=")
        p = self.rational()
        c = None
        if self.accept(","):
            self.expect("c")
            self.expect("=")
            c = self.rational()
        if rule is Rule.RIGHT_GEOMETRIC and (c is None or c <= 1):
            raise ParseError("rgeom needs c > 1", start)
        prefix: list[Interval] = []
        exc_set = exc_window = None
        while self.accept(";"):
            if self.accept("prefix"):
                prefix.append(self.interval())
                while self.accept(","):
                    prefix.append(self.interval())
            elif self.accept("except"):
                exc_set = self.index_set()
                self.expect("->")
                exc_window = self.interval()
            else:
                self.error(f"unexpected {self.describe()}", "prefix", "except")
        self.expect(")")
        try:
            return WindowFamily(p, rule, c, tuple(prefix), exc_set, exc_window)
        except ValueError as exc:
            raise ParseError(str(exc), start) from None


def _run(text: str, method: str):
    p = _Parser(text)
    out = getattr(p, method)()
    p.finish()
    return out


def parse_rational(text: str) -> Fraction:
    return _run(text, "rational")


def parse_set(text: str):
    return _run(text, "real_set")


def parse_index_set(text: str) -> IndexSet:
    return _run(text, "index_set")


def parse_sequence(text: str) -> StepSequence:
    return _run(text, "sequence")


def parse_family(text: str) -> WindowFamily:
    return _run(text, "family")


def parse_ideal(text: str) -> Ideal:
    key = text.strip().lower()
    try:
        return Ideal(key)
    except ValueError:
        raise ParseError(f"unknown ideal {text!r}", 0, ("'fin'", "'d0'")) from None


# formatting back into the language ------------------------------------------


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_interval(J: Interval) -> str:
    return f"[{format_rational(J.lo)},{format_rational(J.hi)}]"


def format_set(E) -> str:
    if isinstance(E, IntervalSet):
        return " u ".join(format_interval(J) for J in E) if E else "empty"
    if isinstance(E, GapSet):
        return f"gapset(c={format_rational(E.c)})"
    if isinstance(E, GapUnion):
        head = format_set(E.gap)
        return head + (" u " + format_set(E.extra) if E.extra else "")
    raise TypeError(E)


def format_sequence(x: StepSequence) -> str:
    parts = [f"mod={x.modulus}", ", ".join(f"{r}:{format_rational(v)}" for r, v in enumerate(x.class_values))]
    if x.exceptions:
        parts.append("except " + ", ".join(f"{k}->{format_rational(v)}" for k, v in x.exceptions.items()))
    if x.override_set is not None:
        vals = x.override_values
        shown = [vals[0]] if len(set(vals)) == 1 else list(vals)
        parts.append(f"on {x.override_set!r} -> " + ", ".join(format_rational(v) for v in shown))
    return "steps(" + "; ".join(parts) + ")"


def format_family(W: WindowFamily) -> str:
    head = f"{W.rule.value}(p={format_rational(W.center)}"
    if W.c is not None:
        head += f",c={format_rational(W.c)}"
    if W.prefix:
        head += "; prefix " + ", ".join(format_interval(J) for J in W.prefix)
    if W.exception_set is not None:
        head += f"; except {W.exception_set!r} -> {format_interval(W.exception_window)}"
    return head + ")"
