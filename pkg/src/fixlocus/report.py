"""Report rows and their machine (JSON) and human renderings."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from fixlocus.counting import FixReport
from fixlocus.parser import parse_cycles
from fixlocus.perm import FiniteGroup, Permutation, format_cycles

FORMAT_VERSION = 1


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class ValueRow:
    """One number for one element (bounds, 2D counts, ovals)."""

    name: str
    element: Permutation
    value: Fraction
    details: tuple[tuple[str, str], ...] = ()


Row = Union[FixReport, ValueRow]


@dataclass(frozen=True)
class Report:
    command: str
    degree: int
    rows: tuple[Row, ...]
    assumptions: tuple[str, ...] = field(default=())

    def to_json(self) -> str:
        doc = {
            "format": FORMAT_VERSION,
            "command": self.command,
            "degree": self.degree,
            "rows": [_row_to_dict(r) for r in self.rows],
            "assumptions": list(self.assumptions),
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        doc = json.loads(text)
        if doc.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported report format {doc.get('format')!r}")
        degree = doc["degree"]
        rows = tuple(_row_from_dict(d, degree) for d in doc["rows"])
        return cls(doc["command"], degree, rows, tuple(doc["assumptions"]))

    def to_text(self) -> str:
        lines = [f"{_name(r)}: {_value(r)}" for r in self.rows]
        lines += [f"* {a}" for a in self.assumptions]
        return "\n".join(lines) + "\n"


def _name(r: Row) -> str:
    if isinstance(r, FixReport):
        return r.name or format_cycles(r.element)
    return r.name


def _value(r: Row) -> str:
    return str(r.count) if isinstance(r, FixReport) else format_rational(r.value)


def _row_to_dict(r: Row) -> dict:
    if isinstance(r, FixReport):
        return {
            "type": "fix",
            "name": r.name,
            "element": format_cycles(r.element),
            "order": r.order,
            "J": list(r.J),
            "I": list(r.I),
            "n_values": {str(i): n for i, n in r.n_values},
            "normalizer_order": r.normalizer_order,
            "count": r.count,
            "upper_bound": format_rational(r.upper_bound),
            "assumptions": list(r.assumptions),
        }
    return {
        "type": "value",
        "name": r.name,
        "element": format_cycles(r.element),
        "value": format_rational(r.value),
        "details": {k: v for k, v in r.details},
    }


def _row_from_dict(d: dict, degree: int) -> Row:
    element = parse_cycles(d["element"], degree)
    if d["type"] == "fix":
        return FixReport(
            element, d["order"], tuple(d["J"]), tuple(d["I"]),
            tuple(sorted((int(i), n) for i, n in d["n_values"].items())),
            d["normalizer_order"], d["count"], Fraction(d["upper_bound"]),
            tuple(d["assumptions"]), d["name"])
    if d["type"] == "value":
        return ValueRow(d["name"], element, Fraction(d["value"]),
                        tuple(sorted(d["details"].items())))
    raise ValueError(f"unknown row type {d['type']!r}")


def collect_assumptions(rows: Sequence[Row], extra: Sequence[str] = ()) -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for r in rows:
        if isinstance(r, FixReport):
            seen.update(dict.fromkeys(r.assumptions))
    seen.update(dict.fromkeys(extra))
    return tuple(seen)


def element_names(G: FiniteGroup, names: Sequence[str]) -> dict[int, str]:
    """A shortest positive word in the named generators for every element.

    Breadth-first from the identity, trying generators in the given order, so
    the names are deterministic.  Runs of one letter are written as powers.
    """
    table = G._table
    right = [G.indices_of(gen_row[table]) for gen_row in
             (np.asarray(g.images, dtype=np.intc) for g in G.generators)]
    words: dict[int, tuple[int, ...]] = {0: ()}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for k, mult in enumerate(right):
            b = int(mult[a])
            if b not in words:
                words[b] = words[a] + (k,)
                queue.append(b)
    out = {}
    for idx, w in words.items():
        parts: list[str] = []
        run_gen, run = None, 0
        for k in w + (None,):
            if k == run_gen:
                run += 1
                continue
            if run_gen is not None:
                parts.append(names[run_gen] if run == 1 else f"{names[run_gen]}^{run}")
            run_gen, run = k, 1
        out[idx] = "*".join(parts) or "1"
    return out
