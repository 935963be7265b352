"""Persistent tables of Milnor-basis structure constants.

File format (UTF-8, LF)::

    motivic-milnor-constants v1 maxp=<n>
    <E1>|<R1>*<E2>|<R2> := <product in text form>
    ...

Sequences are canonical tuples such as ``(1)`` or ``(0,2)``; ``()`` is
empty.  Entries appear in canonical key order.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from typing import Optional

from .dual import basis_up_to, mono_bidegree
from .errors import CorruptTable, IOFailure, VersionMismatch
from .expr import ParseError, eval_text
from .product import OpElement, bidegree, qp_mul_basis
from .sequences import Bidegree, format_seq

FORMAT_VERSION = "v1"
HEADER_RE = re.compile(r"^motivic-milnor-constants (\S+) maxp=(\d+)$")
_SEQ = r"\(([\d,]*)\)"
KEY_RE = re.compile(rf"^{_SEQ}\|{_SEQ}\*{_SEQ}\|{_SEQ}$")


def table_key(left, right) -> str:
    return "*".join(f"{format_seq(m[0])}|{format_seq(m[1])}" for m in (left, right))


def parse_key(text: str) -> tuple:
    m = KEY_RE.match(text)
    if not m:
        raise CorruptTable(f"malformed key {text!r}")
    seqs = [tuple(int(x) for x in g.split(",")) if g else () for g in m.groups()]
    return (seqs[0], seqs[1]), (seqs[2], seqs[3])


@dataclass
class ConstantsTable:
    max_p: int
    entries: dict = field(default_factory=dict)  # (left, right) -> OpElement

    def __getitem__(self, pair) -> OpElement:
        return self.entries[pair]

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ConstantsTable) and self.max_p == other.max_p
                and self.entries == other.entries)


def expected_pairs(max_p: int) -> list:
    basis = basis_up_to(max_p)
    return [(x, y) for x in basis for y in basis]


def constants_table(max_p: int) -> ConstantsTable:
    """All products Q(E1)P(R1) * Q(E2)P(R2) with both factors of degree <= max_p."""
    entries = {(x, y): qp_mul_basis(*x, *y) for x, y in expected_pairs(max_p)}
    return ConstantsTable(max_p, entries)


def dumps_table(table: ConstantsTable) -> str:
    lines = [f"motivic-milnor-constants {FORMAT_VERSION} maxp={table.max_p}"]
    for x, y in expected_pairs(table.max_p):
        if (x, y) in table.entries:
            lines.append(f"{table_key(x, y)} := {table.entries[(x, y)]}")
    return "\n".join(lines) + "\n"


def save_table(table: ConstantsTable, path) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps_table(table))
    except OSError as exc:
        raise IOFailure(str(exc)) from exc


def loads_table(text: str, spot_check: float = 0.01,
                rng: Optional[random.Random] = None) -> ConstantsTable:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CorruptTable("empty table file")
    m = HEADER_RE.match(lines[0])
    if not m:
        raise CorruptTable(f"bad header {lines[0]!r}")
    if m.group(1) != FORMAT_VERSION:
        raise VersionMismatch(f"table version {m.group(1)}, expected {FORMAT_VERSION}")
    max_p = int(m.group(2))
    entries = {}
    for lineno, line in enumerate(lines[1:], start=2):
        key_text, sep, value = line.partition(" := ")
        if not sep:
            raise CorruptTable(f"line {lineno}: missing ' := '")
        pair = parse_key(key_text)
        if pair in entries:
            raise CorruptTable(f"line {lineno}: duplicate key {key_text}")
        try:
            entries[pair] = eval_text(value)
        except (ParseError, ValueError) as exc:
            raise CorruptTable(f"line {lineno}: {exc}") from exc
    table = ConstantsTable(max_p, entries)
    _verify(table, spot_check, rng or random.Random())
    return table


def load_table(path, spot_check: float = 0.01,
               rng: Optional[random.Random] = None) -> ConstantsTable:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise IOFailure(str(exc)) from exc
    return loads_table(text, spot_check, rng)


def _verify(table: ConstantsTable, spot_check: float, rng: random.Random) -> None:
    pairs = expected_pairs(table.max_p)
    if set(pairs) != set(table.entries):
        raise CorruptTable("key set does not match maxp")
    for x, y in pairs:
        value = table.entries[(x, y)]
        if value:
            want = mono_bidegree(x) + mono_bidegree(y)
            if bidegree(value) != Bidegree(*want):
                raise CorruptTable(f"{table_key(x, y)} is not homogeneous of degree {want}")
    count = min(len(pairs), max(1, math.ceil(spot_check * len(pairs))))
    for x, y in rng.sample(pairs, count):
        if qp_mul_basis(*x, *y) != table.entries[(x, y)]:
            raise CorruptTable(f"spot check failed at {table_key(x, y)}")
