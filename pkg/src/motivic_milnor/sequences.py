"""Finitely supported exponent sequences and mod-2 binomial machinery.

A sequence ``(r_0, r_1, ...)`` is stored as a plain tuple of naturals in
canonical form: trailing zeros are stripped, so ``()`` is the zero sequence
and tuple equality is sequence equality.  Index ``i`` is the subscript of
``tau_i`` / ``xi_i``.
"""

from __future__ import annotations

import os
from itertools import zip_longest
from typing import Iterable, NamedTuple, Sequence

from .errors import IndexOverCap, NotExterior, SubUnderflow

Seq = tuple  # canonical tuple of naturals
SeqE = tuple  # canonical tuple with entries in {0, 1}

DEFAULT_CAP = 64

_cap = int(os.environ.get("MOTIVIC_SEQ_CAP", DEFAULT_CAP))


def get_cap() -> int:
    return _cap


def set_cap(cap: int) -> None:
    """Change the largest admissible subscript (exclusive)."""
    global _cap
    if cap < 1:
        raise ValueError("cap must be positive")
    _cap = cap


def canon(entries: Iterable[int]) -> Seq:
    """Return the canonical tuple for ``entries``, checking sign and cap."""
    out = list(entries)
    while out and out[-1] == 0:
        out.pop()
    if len(out) > _cap:
        raise IndexOverCap(f"index {len(out) - 1} exceeds cap {_cap}")
    for x in out:
        if x < 0:
            raise ValueError(f"negative sequence entry in {tuple(out)}")
    return tuple(out)


def _trim(out: list) -> Seq:
    while out and out[-1] == 0:
        out.pop()
    if len(out) > _cap:
        raise IndexOverCap(f"index {len(out) - 1} exceeds cap {_cap}")
    return tuple(out)


def is_seqe(s: Sequence[int]) -> bool:
    return all(x in (0, 1) for x in s)


def as_seqe(entries: Iterable[int]) -> SeqE:
    s = canon(entries)
    if not is_seqe(s):
        raise NotExterior(f"{s} has entries outside {{0, 1}}")
    return s


def unit_seq(n: int, i: int) -> Seq:
    """The sequence with ``n`` at index ``i`` and zeros elsewhere."""
    if i >= _cap:
        raise IndexOverCap(f"index {i} exceeds cap {_cap}")
    if n == 0:
        return ()
    return (0,) * i + (n,)


def wsum(r: Sequence[int]) -> int:
    return sum(x << i for i, x in enumerate(r))


def nsum(r: Sequence[int]) -> int:
    return sum(r)


def seq_leq(r: Sequence[int], r2: Sequence[int]) -> bool:
    if len(r) > len(r2):
        if any(r[len(r2):]):
            return False
    return all(a <= b for a, b in zip(r, r2))


def seq_add(r: Sequence[int], r2: Sequence[int]) -> Seq:
    return _trim([a + b for a, b in zip_longest(r, r2, fillvalue=0)])


def seq_sub(r: Sequence[int], r2: Sequence[int]) -> Seq:
    out = [a - b for a, b in zip_longest(r, r2, fillvalue=0)]
    if any(x < 0 for x in out):
        raise SubUnderflow(f"{tuple(r2)} is not <= {tuple(r)}")
    return _trim(out)


def drop_zeroth(r: Sequence[int]) -> Seq:
    """``r`` with entry 0 forced to zero (folding xi_0 = 1 into the unit)."""
    if not r or r[0] == 0:
        return tuple(r)
    return _trim([0, *r[1:]])


def from_wsum(w: int) -> SeqE:
    """The unique 0/1 sequence with weighted sum ``w`` (binary digits)."""
    if w < 0:
        raise ValueError("weighted sum must be nonnegative")
    if w.bit_length() > _cap:
        raise IndexOverCap(f"{w} needs index {w.bit_length() - 1} >= cap {_cap}")
    return tuple((w >> i) & 1 for i in range(w.bit_length()))


def binom_mod2(m: int, n: int) -> int:
    """Parity of C(m, n); zero whenever m < n (including negative m)."""
    if n < 0 or m < n:
        return 0
    return 1 if (n & ~m) == 0 else 0


def binom_seq_mod2(r: Sequence[int], r2: Sequence[int]) -> int:
    for a, b in zip_longest(r, r2, fillvalue=0):
        if not binom_mod2(a, b):
            return 0
    return 1


def multinomial_mod2(parts: Iterable[int]) -> int:
    """Parity of (sum parts)! / prod(parts!): 1 iff binary addition is carry-free."""
    acc = 0
    for p in parts:
        if p < 0:
            return 0
        if acc & p:
            return 0
        acc |= p
    return 1


class Bidegree(NamedTuple):
    p: int  # topological degree
    q: int  # weight

    def __add__(self, other):  # type: ignore[override]
        return Bidegree(self.p + other.p, self.q + other.q)


def tau_gen_degree(i: int) -> Bidegree:
    return Bidegree((2 << i) - 1, (1 << i) - 1)


def xi_gen_degree(j: int) -> Bidegree:
    return Bidegree((2 << j) - 2, (1 << j) - 1)


def bidegree_of_basis(e: Sequence[int], r: Sequence[int]) -> Bidegree:
    """Bidegree of tau(E) xi(R); also the bidegree of its dual Q(E) P(R)."""
    p = q = 0
    for i, x in enumerate(e):
        if x:
            p += x * ((2 << i) - 1)
            q += x * ((1 << i) - 1)
    for j, x in enumerate(r):
        if x:
            p += x * ((2 << j) - 2)
            q += x * ((1 << j) - 1)
    return Bidegree(p, q)


def format_seq(s: Sequence[int]) -> str:
    return "(" + ",".join(map(str, s)) + ")"
