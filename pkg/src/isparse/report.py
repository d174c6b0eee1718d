"""Command reports in a text form and a stable machine-readable JSON form.

Machine encoding of values:

* ``Fraction`` becomes the string ``"p/q"`` (integers too, e.g. ``"2/1"``);
* a certified enclosure becomes ``{"enclosure": [lo, hi], "tag": t}`` with
  ``t`` one of ``">=-certified"``, ``"<=-certified"``, ``"two-sided"``;
* sets, index sets, sequences and window families become
  ``{"set": text}`` and so on, with ``text`` in the input mini-language.

:func:`decode` reverses every one of these, so ``decode(encode(v)) == v``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .classical import Bounds, GapSet, GapUnion
from .idensity import WindowFamily
from .indexsets import IndexSet
from .parsing import (
    format_family,
    format_rational,
    format_sequence,
    format_set,
    parse_family,
    parse_index_set,
    parse_sequence,
    parse_set,
)
from .sequences import StepSequence
from .sets import IntervalSet

TWO_SIDED = "two-sided"
LOWER = ">=-certified"  # the true value is at least lo
UPPER = "<=-certified"  # the true value is at most hi
TAGS = (TWO_SIDED, LOWER, UPPER)

_RATIONAL = re.compile(r"^-?\d+/\d+$")


@dataclass(frozen=True)
class Enclosure:
    """An exact rational enclosure plus which of its ends is certified."""

    bounds: Bounds
    tag: str = TWO_SIDED

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown enclosure tag {self.tag!r}")

    def text(self) -> str:
        lo, hi = format_rational(self.bounds.lo), format_rational(self.bounds.hi)
        if self.tag == LOWER:
            return f">= {lo}"
        if self.tag == UPPER:
            return f"<= {hi}"
        return f"[{lo}, {hi}] (two-sided)"


def encode(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, Enclosure):
        b = value.bounds
        return {"enclosure": [format_rational(b.lo), format_rational(b.hi)], "tag": value.tag}
    if isinstance(value, Bounds):
        return encode(Enclosure(value))
    if isinstance(value, (IntervalSet, GapSet, GapUnion)):
        return {"set": format_set(value)}
    if isinstance(value, IndexSet):
        return {"indexset": repr(value)}
    if isinstance(value, StepSequence):
        return {"sequence": format_sequence(value)}
    if isinstance(value, WindowFamily):
        return {"family": format_family(value)}
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    raise TypeError(f"cannot encode {type(value).__name__}")


_DECODERS = {
    "set": parse_set,
    "indexset": parse_index_set,
    "sequence": parse_sequence,
    "family": parse_family,
}


def decode(obj: Any) -> Any:
    if isinstance(obj, str):
        return Fraction(obj) if _RATIONAL.match(obj) else obj
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    if isinstance(obj, dict):
        if set(obj) == {"enclosure", "tag"}:
            lo, hi = obj["enclosure"]
            return Enclosure(Bounds(Fraction(lo), Fraction(hi)), obj["tag"])
        if len(obj) == 1:
            (key, text), = obj.items()
            if key in _DECODERS and isinstance(text, str):
                return _DECODERS[key](text)
        return {k: decode(v) for k, v in obj.items()}
    return obj


@dataclass
class Report:
    command: str
    results: dict = field(default_factory=dict)
    exit_code: int = 0
    notes: list = field(default_factory=list)

    def add(self, key: str, value: Any) -> None:
        self.results[key] = value

    def machine(self) -> str:
        doc = {"command": self.command, "exit_code": self.exit_code, "results": encode(self.results)}
        return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"

    def text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, value in self.results.items():
            lines.extend(_text_lines(key, value, 0))
        lines.extend(f"note: {n}" for n in self.notes)
        lines.append(f"exit: {self.exit_code}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return self.machine() if fmt == "machine" else self.text()


def _scalar_text(value: Any) -> str:
    if isinstance(value, Fraction):
        s = format_rational(value)
        if value.denominator != 1:
            s += f"  (~{float(value):.6g}, advisory)"
        return s
    if isinstance(value, Enclosure):
        return value.text()
    if isinstance(value, Bounds):
        return Enclosure(value).text()
    if isinstance(value, (IntervalSet, GapSet, GapUnion)):
        return format_set(value)
    if isinstance(value, StepSequence):
        return format_sequence(value)
    if isinstance(value, WindowFamily):
        return format_family(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _text_lines(key: str, value: Any, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(value, dict):
        out = [f"{pad}{key}:"]
        for k, v in value.items():
            out.extend(_text_lines(str(k), v, depth + 1))
        return out
    if isinstance(value, (list, tuple)) and any(isinstance(v, (dict, list, tuple)) for v in value):
        out = [f"{pad}{key}:"]
        for i, v in enumerate(value):
            out.extend(_text_lines(f"- {i}", v, depth + 1))
        return out
    if isinstance(value, (list, tuple)):
        return [f"{pad}{key}: " + ", ".join(_scalar_text(v) for v in value)]
    return [f"{pad}{key}: {_scalar_text(value)}"]


def parse_machine(text: str) -> dict:
    """Read a machine report back, decoding every value."""
    doc = json.loads(text)
    doc["results"] = decode(doc["results"])
    return doc
