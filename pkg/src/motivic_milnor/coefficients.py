"""The universal coefficient ring F2[tau, rho].

An element is a set of exponent pairs ``(a, b)`` standing for the sum of
``tau^a rho^b``; addition is symmetric difference.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, Optional

from .sequences import Bidegree


class Coeff:
    __slots__ = ("monos", "_hash")

    def __init__(self, monos: Iterable[tuple[int, int]] = ()):
        acc: set = set()
        for m in monos:
            a, b = m
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in tau^{a} rho^{b}")
            acc ^= {(a, b)}
        self.monos = frozenset(acc)
        self._hash = None

    @classmethod
    def _from_frozenset(cls, monos: frozenset) -> "Coeff":
        c = cls.__new__(cls)
        c.monos = monos
        c._hash = None
        return c

    def __add__(self, other: "Coeff") -> "Coeff":
        if not isinstance(other, Coeff):
            return NotImplemented
        return Coeff._from_frozenset(self.monos ^ other.monos)

    __sub__ = __add__

    def __mul__(self, other: "Coeff") -> "Coeff":
        if not isinstance(other, Coeff):
            return NotImplemented
        acc: set = set()
        for a, b in self.monos:
            for c, d in other.monos:
                acc ^= {(a + c, b + d)}
        return Coeff._from_frozenset(frozenset(acc))

    def __pow__(self, n: int) -> "Coeff":
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other in (0, 1):
            other = ONE if other else ZERO
        return isinstance(other, Coeff) and self.monos == other.monos

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.monos)
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.monos)

    def __iter__(self):
        return iter(self.sorted_monos())

    def __len__(self) -> int:
        return len(self.monos)

    def sorted_monos(self) -> list[tuple[int, int]]:
        """Monomials in canonical order: by total degree, then tau-power descending."""
        return sorted(self.monos, key=lambda m: (m[0] + m[1], -m[0]))

    def is_monomial(self) -> bool:
        return len(self.monos) == 1

    def __repr__(self) -> str:
        return f"Coeff({format_coeff(self)!r})"

    def __str__(self) -> str:
        return format_coeff(self)


ZERO = Coeff()
ONE = Coeff([(0, 0)])
TAU = Coeff([(1, 0)])
RHO = Coeff([(0, 1)])


def coeff_add(x: Coeff, y: Coeff) -> Coeff:
    return x + y


def coeff_mul(x: Coeff, y: Coeff) -> Coeff:
    return x * y


def coeff_monomial(a: int, b: int) -> Coeff:
    return Coeff([(a, b)])


class EvalProfile(enum.Enum):
    GENERIC = "generic"
    RHO_ZERO = "rho-zero"
    CLASSICAL = "classical"

    @classmethod
    def parse(cls, name: str) -> "EvalProfile":
        key = name.strip().lower().replace("_", "-")
        for p in cls:
            if p.value == key:
                return p
        raise ValueError(f"unknown profile {name!r}")


def eval_mono(a: int, b: int, profile: EvalProfile) -> Optional[tuple[int, int]]:
    """Image of one monomial under ``profile``, or None when it maps to zero."""
    if profile is EvalProfile.GENERIC:
        return (a, b)
    if b > 0:
        return None
    if profile is EvalProfile.CLASSICAL:
        return (0, 0)
    return (a, 0)


def coeff_eval(x: Coeff, profile: EvalProfile) -> Coeff:
    if profile is EvalProfile.GENERIC:
        return x
    out = []
    for a, b in x.monos:
        m = eval_mono(a, b, profile)
        if m is not None:
            out.append(m)
    return Coeff(out)


DUAL = "dual"
OPERATION = "operation"


def mono_bidegree(a: int, b: int, side: str) -> Bidegree:
    """Bidegree of tau^a rho^b: dual side tau=(0,-1), rho=(-1,-1); operation side negated."""
    if side == DUAL:
        return Bidegree(-b, -a - b)
    if side == OPERATION:
        return Bidegree(b, a + b)
    raise ValueError(f"unknown side {side!r}")


def coeff_bidegree(x: Coeff, side: str) -> Optional[Bidegree]:
    degs = {mono_bidegree(a, b, side) for a, b in x.monos}
    if not x.monos:
        return None
    if len(degs) == 1:
        return degs.pop()
    return None


def _factor(name: str, e: int) -> str:
    return name if e == 1 else f"{name}^{e}"


def format_mono(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append(_factor("tau", a))
    if b:
        parts.append(_factor("rho", b))
    return " ".join(parts) if parts else "1"


def format_coeff(x: Coeff) -> str:
    if not x.monos:
        return "0"
    return " + ".join(format_mono(a, b) for a, b in x.sorted_monos())


_MONO_RE = re.compile(r"^(?:(tau|rho)(?:\^(\d+))?\s*)*$")
_FACTOR_RE = re.compile(r"(tau|rho)(?:\^(\d+))?")


def parse_coeff(text: str) -> Coeff:
    """Inverse of :func:`format_coeff`."""
    text = text.strip()
    if text == "0":
        return ZERO
    monos = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if chunk == "1":
            monos.append((0, 0))
            continue
        if not chunk or not _MONO_RE.match(chunk):
            raise ValueError(f"bad coefficient monomial {chunk!r}")
        a = b = 0
        for name, exp in _FACTOR_RE.findall(chunk):
            k = int(exp) if exp else 1
            if name == "tau":
                a += k
            else:
                b += k
        monos.append((a, b))
    return Coeff(monos)
