"""Parsing, evaluation and printing of Milnor-basis expressions.

Grammar (whitespace-insensitive)::

    element := term { "+" term }
    term    := factor { ["*"] factor }
    factor  := coeff | basis
    coeff   := "tau" ["^" nat] | "rho" ["^" nat] | "1" | "0"
    basis   := qpart [ppart] | ppart
    qpart   := "Q" "(" natlist ")" | "Q" nat
    ppart   := "P" "(" natlist ")"

``Q(...)`` lists start at e_0 while ``Q i`` is the primitive Q_i.  ``P(...)``
lists start at r_1.  A Q-part immediately followed by a P-part is the
single basis element Q(E)P(R) (which equals the product P(R) * Q(E));
write ``Q(1) * P(1)`` for the product in that order.  A tau-power between
two basis factors is moved through the left factor via the right unit.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .coefficients import EvalProfile
from .dual import UNIT, toggle
from .errors import MotivicError
from .product import OpElement, _qp_mul_full, eval_parity, op_basis, product_oracle
from .sequences import canon, unit_seq


class ParseError(MotivicError, SyntaxError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


@dataclass(frozen=True)
class Coef:
    tau: int = 0
    rho: int = 0


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Basis:
    e: tuple = ()
    r: tuple = ()


Factor = Union[Coef, Zero, Basis]


@dataclass(frozen=True)
class Expr:
    terms: tuple  # tuple of tuples of factors


_TOKEN = re.compile(r"\s*(?:(tau|rho)|([QP])|(\d+)|([()+*,^]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    raw = text.encode("utf-8")
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            offset = len(text[:pos].encode("utf-8"))
            raise ParseError(f"unexpected character {text[pos]!r}", offset,
                             {"tau", "rho", "Q", "P", "nat", "(", ")", "+", "*", ",", "^"})
        kind = "name" if m.group(1) or m.group(2) else "nat" if m.group(3) else "punct"
        value = m.group(1) or m.group(2) or m.group(3) or m.group(4)
        start = m.start(m.lastindex)
        tokens.append((kind, value, len(text[:start].encode("utf-8"))))
        pos = m.end()
    tokens.append(("end", "", len(raw)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"unexpected {_show(tok)}", tok[2], {value})
        return tok

    def nat(self) -> int:
        tok = self.take()
        if tok[0] != "nat":
            raise ParseError(f"unexpected {_show(tok)}", tok[2], {"nat"})
        return int(tok[1])

    def natlist(self, allowed=None) -> list:
        self.expect("(")
        out = []
        if self.peek()[1] == ")":
            self.take()
            return out
        while True:
            at = self.peek()[2]
            out.append(self.nat())
            if allowed is not None and out[-1] not in allowed:
                raise ParseError(f"entry {out[-1]} not allowed (Q(...) entries are 0 or 1)",
                                 at, {str(v) for v in allowed})
            tok = self.take()
            if tok[1] == ")":
                return out
            if tok[1] != ",":
                raise ParseError(f"unexpected {_show(tok)}", tok[2], {",", ")"})

    def element(self) -> Expr:
        terms = [self.term()]
        while self.peek()[1] == "+":
            self.take()
            terms.append(self.term())
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {_show(tok)}", tok[2], {"+", "end of input"})
        return Expr(tuple(terms))

    def term(self) -> tuple:
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                factors.append(self.factor())
            elif _starts_factor(tok):
                factors.append(self.factor())
            else:
                return tuple(factors)

    def factor(self) -> Factor:
        tok = self.peek()
        if tok[1] in ("tau", "rho"):
            self.take()
            k = 1
            if self.peek()[1] == "^":
                self.take()
                k = self.nat()
            return Coef(k, 0) if tok[1] == "tau" else Coef(0, k)
        if tok[0] == "nat":
            self.take()
            if tok[1] == "1":
                return Coef()
            if tok[1] == "0":
                return Zero()
            raise ParseError(f"bare number {tok[1]}", tok[2], {"0", "1"})
        if tok[1] == "Q":
            self.take()
            if self.peek()[0] == "nat":
                e = unit_seq(1, self.nat())
            else:
                e = canon(self.natlist(allowed=(0, 1)))
            r: tuple = ()
            if self.peek()[1] == "P":
                self.take()
                r = self.plist()
            return Basis(e, r)
        if tok[1] == "P":
            self.take()
            return Basis((), self.plist())
        raise ParseError(f"unexpected {_show(tok)}", tok[2],
                         {"tau", "rho", "Q", "P", "0", "1"})

    def plist(self) -> tuple:
        tok = self.peek()
        if tok[0] == "nat":
            raise ParseError(
                "P takes a parenthesised list starting at r_1 (there is no P_0 slot)",
                tok[2], {"("})
        return canon([0] + self.natlist())


def _starts_factor(tok) -> bool:
    return tok[1] in ("tau", "rho", "Q", "P") or tok[0] == "nat"


def _show(tok) -> str:
    return "end of input" if tok[0] == "end" else repr(tok[1])


def parse(text: str) -> Expr:
    return _Parser(text).element()


# ---------------------------------------------------------------------------
# evaluation

BasisProduct = Callable[..., frozenset]


def _oracle_product(e1, r1, n, e2, r2) -> frozenset:
    return frozenset(product_oracle(e1, r1, n, e2, r2).parity())


def _mul(x: set, y: set, product: BasisProduct) -> set:
    acc: set = set()
    for a, b, (e1, r1) in x:
        for c, d, (e2, r2) in y:
            for a2, b2, key in product(e1, r1, c, e2, r2):
                toggle(acc, (a + a2, b + d + b2, key))
    return acc


def evaluate(expr: Expr, oracle: bool = False) -> OpElement:
    """Multiply out ``expr``; with ``oracle=True`` every basis product uses the pairing oracle."""
    product = _oracle_product if oracle else _qp_mul_full
    total: set = set()
    for term in expr.terms:
        acc: Optional[set] = None
        pending = (0, 0)  # coefficient waiting for the next basis factor
        zero = False
        for f in term:
            if isinstance(f, Zero):
                zero = True
            elif isinstance(f, Coef):
                pending = (pending[0] + f.tau, pending[1] + f.rho)
            else:
                piece = {(pending[0], pending[1], op_basis(f.e, f.r))}
                acc = piece if acc is None else _mul(acc, piece, product)
                pending = (0, 0)
        if zero:
            continue
        if acc is None:
            acc = {(pending[0], pending[1], UNIT)}
        elif pending != (0, 0):
            acc = _mul(acc, {(pending[0], pending[1], UNIT)}, product)
        for t in acc:
            toggle(total, t)
    return OpElement.from_parity(total)


def eval_text(text: str, profile: EvalProfile = EvalProfile.GENERIC,
              oracle: bool = False) -> OpElement:
    x = evaluate(parse(text), oracle=oracle)
    if profile is not EvalProfile.GENERIC:
        x = OpElement.from_parity(eval_parity(x.parity(), profile))
    return x


# ---------------------------------------------------------------------------
# printing


def to_text(x: OpElement) -> str:
    return str(x)


def to_json(x: OpElement) -> str:
    terms = []
    for (e, r), c in x.items():
        for a, b in c.sorted_monos():
            terms.append({"tau": a, "rho": b, "Q": list(e), "P": list(r[1:])})
    return json.dumps({"terms": terms}, separators=(",", ":"))


def from_json(text: str) -> OpElement:
    data = json.loads(text)
    acc: set = set()
    for t in data["terms"]:
        key = op_basis(t["Q"], [0] + list(t["P"]) if t["P"] else ())
        toggle(acc, (int(t["tau"]), int(t["rho"]), key))
    return OpElement.from_parity(acc)


def _latex_mono(a: int, b: int) -> str:
    out = ""
    if a:
        out += r"\tau" + (f"^{{{a}}}" if a > 1 else "")
    if b:
        out += r"\rho" + (f"^{{{b}}}" if b > 1 else "")
    return out


def _latex_basis(key) -> str:
    e, r = key
    out = []
    if e:
        out.append("Q(" + ",".join(map(str, e)) + ")")
    if r:
        out.append("P(" + ",".join(map(str, r[1:])) + ")")
    return r"\,".join(out)


def to_latex(x: OpElement) -> str:
    if not x:
        return "0"
    chunks = []
    for key, c in x.items():
        body = _latex_basis(key)
        for a, b in c.sorted_monos():
            coeff = _latex_mono(a, b)
            if coeff and body:
                chunks.append(coeff + r"\," + body)
            else:
                chunks.append(coeff or body or "1")
    return " + ".join(chunks)


FORMATS = {"text": to_text, "json": to_json, "latex": to_latex}


def render(x: OpElement, fmt: str = "text") -> str:
    try:
        return FORMATS[fmt](x)
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}") from None
