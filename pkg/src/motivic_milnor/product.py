"""Products in the motivic Milnor basis Q(E) P(R).

Coefficients always sit on the left of a basis element.  A power of tau
to the right of an operation is handled explicitly (``qp_mul_tau``) since
the right unit moves it: ``Q_0 tau = tau Q_0 + rho``.

``product_oracle`` recomputes every product by pairing against brute-force
coproducts and never touches the matrix enumeration or ``c_coeff``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Optional

from .coefficients import (
    OPERATION,
    Coeff,
    EvalProfile,
    coeff_bidegree,
    eval_mono,
)
from . import dual
from .dual import (
    Combination,
    UNIT,
    basis_up_to,
    c_coeff,
    coproduct_parity,
    dual_mono,
    eta_right_tau_power,
    mono_bidegree,
    mono_sort_key,
    toggle,
)
from .errors import NegativeExponent
from .matrices import b_func, d_seq, enumerate_product_matrices, s_func, t_func
from .sequences import (
    Bidegree,
    binom_mod2,
    binom_seq_mod2,
    from_wsum,
    nsum,
    seq_add,
    seq_sub,
    unit_seq,
    wsum,
)


def format_op_basis(key) -> str:
    e, r = key
    parts = []
    if e:
        parts.append("Q(" + ",".join(map(str, e)) + ")")
    if r:
        parts.append("P(" + ",".join(map(str, r[1:])) + ")")
    return " ".join(parts) if parts else "1"


class OpElement(Combination):
    """Left F2[tau, rho]-linear combination of Milnor basis elements."""

    __slots__ = ()

    def sort_key(self, key):
        return mono_sort_key(key)

    def format_key(self, key) -> str:
        return format_op_basis(key)

    def __mul__(self, other):
        if isinstance(other, Coeff):
            # a coefficient on the right passes through the right unit
            return element_mul(self, OpElement.basis(UNIT, other))
        return element_mul(self, other)

    def __rmul__(self, other: Coeff):
        return self.scale(other)

    def evaluate(self, profile: EvalProfile) -> "OpElement":
        return OpElement.from_parity(eval_parity(self.parity(), profile))

    def bidegree(self) -> Optional[Bidegree]:
        return bidegree(self)


def op_basis(e=(), r=()) -> tuple:
    return dual_mono(e, r)


def q_i(i: int) -> OpElement:
    return OpElement.basis((unit_seq(1, i), ()))


def p_of(r) -> OpElement:
    return OpElement.basis(op_basis((), r))


def qp(e=(), r=()) -> OpElement:
    return OpElement.basis(op_basis(e, r))


def unit() -> OpElement:
    return OpElement.basis(UNIT)


def scalar(c: Coeff) -> OpElement:
    return OpElement.basis(UNIT, c)


def _rho_exp(b: int, where: str) -> int:
    if b < 0:
        raise NegativeExponent(f"negative rho exponent {b} in {where}")
    return b


# ---------------------------------------------------------------------------
# closed forms


@lru_cache(maxsize=None)
def _qp_mul_basis(e1, r1, e2, r2) -> frozenset:
    acc: set = set()
    for y, x in enumerate_product_matrices(e1, r1, e2, r2):
        e_out = seq_add(e2, t_func(y))
        if not (binom_seq_mod2(e_out, e2) and b_func(y) and b_func(x)):
            continue
        sy = s_func(y)
        d = d_seq(r1, s_func(x))
        if not c_coeff(sy, d):
            continue
        a = nsum(d)
        b = _rho_exp(nsum(sy) - nsum(e1) - 2 * nsum(d), "qp_mul_basis")
        toggle(acc, (a, b, (e_out, t_func(x))))
    return frozenset(acc)


def qp_mul_basis(e1, r1, e2, r2) -> OpElement:
    """Q(E1)P(R1) * Q(E2)P(R2) summed over contributing matrix pairs."""
    (e1, r1), (e2, r2) = op_basis(e1, r1), op_basis(e2, r2)
    return OpElement.from_parity(_qp_mul_basis(e1, r1, e2, r2))


def _sub_sequences(r) -> Iterable[tuple]:
    for entries in itertools.product(*(range(x + 1) for x in r)):
        yield seq_sub(entries, ())


@lru_cache(maxsize=None)
def _qp_mul_tau(e, r, n: int) -> frozenset:
    acc: set = set()
    for m in range(n + 1):
        if not binom_mod2(n, m):
            continue
        for r_prime in _sub_sequences(r):
            w = wsum(e) + wsum(r_prime) - m
            if w < 0:
                continue
            e_prime = from_wsum(w)
            if not c_coeff(seq_add(e_prime, (m,)), r_prime):
                continue
            a = nsum(r_prime) + n - m
            b = _rho_exp(
                nsum(e_prime) - nsum(e) - 2 * nsum(r_prime) + 2 * m, "qp_mul_tau"
            )
            toggle(acc, (a, b, (e_prime, seq_sub(r, r_prime))))
    return frozenset(acc)


def qp_mul_tau(e, r, n: int) -> OpElement:
    """Q(E)P(R) * tau^n rewritten with coefficients on the left."""
    e, r = op_basis(e, r)
    return OpElement.from_parity(_qp_mul_tau(e, r, n))


@lru_cache(maxsize=None)
def _qp_mul_full(e1, r1, n, e2, r2) -> frozenset:
    acc: set = set()
    for a, b, (ep, rp) in _qp_mul_tau(e1, r1, n):
        for a2, b2, key in _qp_mul_basis(ep, rp, e2, r2):
            toggle(acc, (a + a2, b + b2, key))
    return frozenset(acc)


def qp_mul_full(e1, r1, n: int, e2, r2) -> OpElement:
    """Q(E1)P(R1) * tau^n * Q(E2)P(R2), composed from the two closed forms."""
    (e1, r1), (e2, r2) = op_basis(e1, r1), op_basis(e2, r2)
    return OpElement.from_parity(_qp_mul_full(e1, r1, n, e2, r2))


def _qp_mul_full_direct(e1, r1, n, e2, r2) -> set:
    acc: set = set()
    for m in range(n + 1):
        if not binom_mod2(n, m):
            continue
        for r_prime in _sub_sequences(r1):
            w = wsum(e1) + wsum(r_prime) - m
            if w < 0:
                continue
            e_prime = from_wsum(w)
            if not c_coeff(seq_add(e_prime, (m,)), r_prime):
                continue
            r_rest = seq_sub(r1, r_prime)
            for y, x in enumerate_product_matrices(e_prime, r_rest, e2, r2):
                e_out = seq_add(e2, t_func(y))
                if not (binom_seq_mod2(e_out, e2) and b_func(y) and b_func(x)):
                    continue
                sy = s_func(y)
                d = d_seq(r_rest, s_func(x))
                if not c_coeff(sy, d):
                    continue
                sx = seq_sub(r1, seq_add(r_prime, d))  # S(X) on indices >= 1
                a = nsum(seq_sub(r1, sx)) + n - m
                b = _rho_exp(
                    nsum(sy) - nsum(e1) + 2 * nsum(sx) - 2 * nsum(r1) + 2 * m,
                    "qp_mul_full_direct",
                )
                toggle(acc, (a, b, (e_out, t_func(x))))
    return acc


def qp_mul_full_direct(e1, r1, n: int, e2, r2) -> OpElement:
    """Same product as :func:`qp_mul_full`, as one flattened double sum."""
    (e1, r1), (e2, r2) = op_basis(e1, r1), op_basis(e2, r2)
    return OpElement.from_parity(_qp_mul_full_direct(e1, r1, n, e2, r2))


def mul_parity(x: Iterable[tuple], y: Iterable[tuple]) -> set:
    y = list(y)
    acc: set = set()
    for a, b, (e1, r1) in x:
        for c, d, (e2, r2) in y:
            for a2, b2, key in _qp_mul_full(e1, r1, c, e2, r2):
                toggle(acc, (a + a2, b + d + b2, key))
    return acc


def element_mul(x: OpElement, y: OpElement) -> OpElement:
    """Bilinear product; tau-powers of the right factor go through ``qp_mul_tau``."""
    return OpElement.from_parity(mul_parity(x.parity(), y.parity()))


# ---------------------------------------------------------------------------
# the pairing oracle


def product_oracle(e1, r1, n: int, e2, r2) -> OpElement:
    """Q(E1)P(R1) tau^n Q(E2)P(R2) from brute-force coproducts.

    The coefficient of Q(E)P(T) is the coefficient of
    ``tau(E1)xi(R1) ⊗ tau(E2)xi(R2)`` in ``psi(tau(E)xi(T))`` after the left
    leg is multiplied by ``(tau + rho tau_0)^n``.
    """
    left, right = op_basis(e1, r1), op_basis(e2, r2)
    p1, q1 = mono_bidegree(left)
    p2, q2 = mono_bidegree(right)
    total = Bidegree(p1 + p2, q1 + q2 + n)
    acc: set = set()
    for cand in basis_up_to(total.p):
        if mono_bidegree(cand).q > total.q:
            continue
        for a, b, (lm, rm) in coproduct_parity(cand):
            if rm != right:
                continue
            for a2, b2, m in eta_right_tau_power(n, [(a, b, lm)]):
                if m == left:
                    toggle(acc, (a2, b2, cand))
    for a, b, cand in acc:
        assert mono_bidegree(cand) + Bidegree(b, a + b) == total, (cand, a, b)
    return OpElement.from_parity(acc)


def oracle_products(max_p: int, max_n: int) -> dict:
    """Every oracle product with both factors of degree <= max_p, tau-power <= max_n.

    Returns ``{(left, n, right): parity frozenset}``; one pass over the
    coproducts of all monomials of degree <= 2 * max_p.
    """
    out: dict = {}
    for cand in basis_up_to(2 * max_p):
        for a, b, (lm, rm) in coproduct_parity(cand):
            if mono_bidegree(rm).p > max_p:
                continue
            for n in range(max_n + 1):
                for a2, b2, m in eta_right_tau_power(n, [(a, b, lm)]):
                    if mono_bidegree(m).p > max_p:
                        continue
                    toggle(out.setdefault((m, n, rm), set()), (a2, b2, cand))
    return {k: frozenset(v) for k, v in out.items() if v}


# ---------------------------------------------------------------------------
# gradings and specializations


def bidegree(x: OpElement) -> Optional[Bidegree]:
    """Common operation-side bidegree, or None if x is zero or inhomogeneous."""
    degs = set()
    for key, c in x.terms.items():
        cd = coeff_bidegree(c, OPERATION)
        if cd is None:
            return None
        degs.add(mono_bidegree(key) + cd)
    return degs.pop() if len(degs) == 1 else None


def eval_parity(parity: Iterable[tuple], profile: EvalProfile) -> set:
    acc: set = set()
    for a, b, key in parity:
        m = eval_mono(a, b, profile)
        if m is not None:
            toggle(acc, (m[0], m[1], key))
    return acc


def clear_caches() -> None:
    """Drop every memo table (dual engine included), e.g. before timing a run."""
    for f in (_qp_mul_basis, _qp_mul_tau, _qp_mul_full, dual._tree, dual._simplify_tree,
              dual._simplify_closed, dual._mono_mul, dual._tau0_power_mul,
              dual._coproduct_brute):
        f.cache_clear()

