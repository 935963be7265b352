"""The dual motivic Steenrod algebra A_** in conjugated generators.

A dual monomial ``tau(E) xi(R)`` is the pair ``(E, R)`` of canonical tuples
with ``E`` exterior and ``R[0] == 0`` (xi_0 = 1).  Linear combinations carry
coefficients in F2[tau, rho].  Internally the hot loops work on *parity
sets*: sets of ``(a, b, key)`` triples, each present iff the coefficient of
``tau^a rho^b key`` is odd.

Multiplication rewrites with ``tau_i^2 = tau xi_{i+1} + rho tau_{i+1}``.
Two independent simplifiers exist: :func:`tree_expand` walks the rewriting
tree, :func:`simplify_tau` uses the closed-form coefficient :func:`c_coeff`.
All brute-force paths (``dual_mul``, coproducts, tensor products) go
through the tree so they can serve as an oracle for the closed forms.
"""

from __future__ import annotations

import sys
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional

from .coefficients import DUAL, Coeff, ONE, ZERO, coeff_bidegree, format_mono
from .errors import NegativeExponent, NonzeroR0
from .sequences import (
    Bidegree,
    as_seqe,
    bidegree_of_basis,
    binom_mod2,
    canon,
    from_wsum,
    get_cap,
    is_seqe,
    nsum,
    seq_add,
    unit_seq,
    wsum,
)
from .errors import IndexOverCap

UNIT = ((), ())

sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))


def toggle(acc: set, key) -> None:
    if key in acc:
        acc.remove(key)
    else:
        acc.add(key)


def dual_mono(e=(), r=()) -> tuple:
    """Validated dual monomial ``tau(E) xi(R)``."""
    e = as_seqe(e)
    r = canon(r)
    if r and r[0]:
        raise NonzeroR0(f"xi exponents {r} have nonzero entry at index 0")
    return (e, r)


def mono_bidegree(mono) -> Bidegree:
    return bidegree_of_basis(mono[0], mono[1])


def mono_sort_key(mono):
    p, q = bidegree_of_basis(mono[0], mono[1])
    return (p, q, mono[0], mono[1])


def format_dual_mono(mono) -> str:
    e, r = mono
    parts = [f"tau_{i}" for i, x in enumerate(e) if x]
    parts += [f"xi_{j}" if x == 1 else f"xi_{j}^{x}" for j, x in enumerate(r) if x]
    return " ".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# linear combinations


class Combination:
    """Finite map key -> Coeff with no zero values."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def from_parity(cls, parity: Iterable[tuple]):
        grouped: dict = {}
        for a, b, key in parity:
            grouped.setdefault(key, []).append((a, b))
        return cls({k: Coeff(v) for k, v in grouped.items()})

    @classmethod
    def basis(cls, key, coeff: Coeff = ONE):
        return cls({key: coeff})

    def parity(self) -> set:
        return {(a, b, k) for k, c in self.terms.items() for a, b in c.monos}

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return type(self)(out)

    __sub__ = __add__

    def scale(self, c: Coeff):
        return type(self)({k: c * v for k, v in self.terms.items()})

    def coefficient(self, key) -> Coeff:
        return self.terms.get(key, ZERO)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return type(self) is type(other) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def sort_key(self, key):
        return key

    def items(self) -> list:
        """Terms in canonical order, leading (highest-degree) term first."""
        return sorted(self.terms.items(), key=lambda kv: self.sort_key(kv[0]), reverse=True)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def format_key(self, key) -> str:
        return repr(key)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.items():
            body = self.format_key(key)
            for a, b in c.sorted_monos():
                coeff = format_mono(a, b)
                if body == "1":
                    chunks.append(coeff)
                elif coeff == "1":
                    chunks.append(body)
                else:
                    chunks.append(f"{coeff} {body}")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"


class DualElement(Combination):
    __slots__ = ()

    def sort_key(self, key):
        return mono_sort_key(key)

    def format_key(self, key) -> str:
        return format_dual_mono(key)

    def __mul__(self, other):
        if isinstance(other, Coeff):
            return self.scale(other)
        return dual_mul(self, other)

    def __rmul__(self, other: Coeff):
        return self.scale(other)


class TensorElement(Combination):
    """Coefficients are global, i.e. act through the left unit on the left leg."""

    __slots__ = ()

    def sort_key(self, key):
        return (mono_sort_key(key[0]), mono_sort_key(key[1]))

    def format_key(self, key) -> str:
        left, right = (format_dual_mono(m) for m in key)
        return f"{left}⊗{right}" if (left, right) != ("1", "1") else "1⊗1"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for key, c in self.items():
            body = self.format_key(key)
            for a, b in c.sorted_monos():
                coeff = format_mono(a, b)
                chunks.append(body if coeff == "1" else f"{coeff} ({body})")
        return " + ".join(chunks)

    def __mul__(self, other):
        return tensor_mul(self, other)


def tau_gen(i: int) -> DualElement:
    return DualElement.basis((unit_seq(1, i), ()))


def xi_gen(j: int, power: int = 1) -> DualElement:
    if j == 0:
        return DualElement.basis(UNIT)
    return DualElement.basis(((), unit_seq(power, j)))


# ---------------------------------------------------------------------------
# the rewriting tree and its closed form


@lru_cache(maxsize=None)
def _tree(s: tuple) -> dict:
    if is_seqe(s):
        return {(s, ()): 1}
    n = next(i for i, x in enumerate(s) if x >= 2)
    if n + 1 >= get_cap():
        raise IndexOverCap(f"rewriting tau_{n}^2 needs index {n + 1} >= cap")
    base = list(s) + [0] * (n + 2 - len(s))
    base[n] -= 2
    right_s = canon(base)
    base[n + 1] += 1
    left_s = canon(base)
    bump = unit_seq(1, n + 1)
    out = dict(_tree(left_s))
    for (e, r), k in _tree(right_s).items():
        key = (e, seq_add(r, bump))
        out[key] = out.get(key, 0) + k
    return out


def tree_expand(s) -> dict:
    """Leaf labels ``(E, R)`` of the rewriting tree rooted at ``S|0``, with exact counts."""
    return dict(_tree(canon(s)))


def _rho_exponent(s, e, r) -> int:
    b = nsum(s) - nsum(e) - 2 * nsum(r)
    if b < 0:
        raise NegativeExponent(f"rho exponent {b} for S={s}, E={e}, R={r}")
    return b


@lru_cache(maxsize=None)
def _simplify_tree(s: tuple) -> tuple:
    out = []
    for (e, r), k in _tree(s).items():
        if k & 1:
            out.append((nsum(r), _rho_exponent(s, e, r), (e, r)))
    return tuple(out)


def simplify_tau_tree(s) -> DualElement:
    """tau(S) in the basis, read off the rewriting tree."""
    return DualElement.from_parity(_simplify_tree(canon(s)))


def c_coeff(s, r) -> int:
    """Parity of the number of tree leaves labelled ``E|R`` below ``S|0``."""
    if r and r[0] > 0:
        return 0
    partial = 0  # sum_{i<n} 2^i (s_i - r_i)
    top = max(len(s), len(r))
    for n in range(1, top):
        i = n - 1
        partial += ((s[i] if i < len(s) else 0) - (r[i] if i < len(r) else 0)) << i
        rn = r[n] if n < len(r) else 0
        if not binom_mod2(partial >> n, rn):
            return 0
    return 1


def _candidate_r(s: tuple) -> Iterator[tuple]:
    # r_n <= floor((sum_{i<n} 2^i s_i - sum_{1<=i<n} 2^i r_i) / 2^n), r_0 = 0
    w = wsum(s)
    top = w.bit_length()

    def rec(n, budget, acc):
        if n >= top:
            yield canon(acc)
            return
        budget += (s[n - 1] << (n - 1)) if n - 1 < len(s) else 0
        bound = budget >> n
        for rn in range(bound + 1):
            yield from rec(n + 1, budget - (rn << n), acc + [rn])

    yield from rec(1, 0, [0])


@lru_cache(maxsize=None)
def _simplify_closed(s: tuple) -> tuple:
    w = wsum(s)
    out = []
    for r in _candidate_r(s):
        if not c_coeff(s, r):
            continue
        e = from_wsum(w - wsum(r))
        out.append((nsum(r), _rho_exponent(s, e, r), (e, r)))
    return tuple(out)


def simplify_tau(s) -> DualElement:
    """tau(S) in the basis via the closed-form coefficient ``c(S, R)``."""
    return DualElement.from_parity(_simplify_closed(canon(s)))


# ---------------------------------------------------------------------------
# multiplication


@lru_cache(maxsize=200_000)
def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    (e1, r1), (e2, r2) = m1, m2
    xi = seq_add(r1, r2)
    s = seq_add(e1, e2)
    if is_seqe(s):
        return ((0, 0, (s, xi)),)
    return tuple((a, b, (e, seq_add(r, xi))) for a, b, (e, r) in _simplify_tree(s))


@lru_cache(maxsize=200_000)
def _tau0_power_mul(k: int, mono: tuple) -> tuple:
    """tau_0^k * mono as parity terms."""
    e, r = mono
    s = seq_add(e, (k,))
    if is_seqe(s):
        return ((0, 0, (s, r)),)
    return tuple((a, b, (e2, seq_add(r2, r))) for a, b, (e2, r2) in _simplify_tree(s))


def mul_parity(x: Iterable[tuple], y: Iterable[tuple]) -> set:
    y = list(y)
    acc: set = set()
    for a1, b1, m1 in x:
        for a2, b2, m2 in y:
            for a, b, m in _mono_mul(m1, m2):
                toggle(acc, (a1 + a2 + a, b1 + b2 + b, m))
    return acc


def dual_mul(x: DualElement, y: DualElement) -> DualElement:
    return DualElement.from_parity(mul_parity(x.parity(), y.parity()))


def eta_right_tau_power(n: int, parity: Iterable[tuple]) -> set:
    """Multiply by ``(tau + rho tau_0)^n``, the right unit image of ``tau^n``."""
    acc: set = set()
    ks = [k for k in range(n + 1) if binom_mod2(n, k)]
    for a, b, m in parity:
        for k in ks:
            for a2, b2, m2 in _tau0_power_mul(k, m):
                toggle(acc, (a + n - k + a2, b + k + b2, m2))
    return acc


def counit(x: DualElement) -> Coeff:
    return x.coefficient(UNIT)


def dual_bidegree(x: DualElement) -> Optional[Bidegree]:
    """Common dual-side bidegree of all terms, or None if inhomogeneous."""
    degs = set()
    for m, c in x.terms.items():
        cd = coeff_bidegree(c, DUAL)
        if cd is None:
            return None
        degs.add(mono_bidegree(m) + cd)
    return degs.pop() if len(degs) == 1 else None


# ---------------------------------------------------------------------------
# tensors


def canonicalize_parity(raw: Iterable[tuple]) -> set:
    """Raw terms ``(a_l, b_l, L, a_r, b_r, R)`` -> canonical ``(a, b, (L, R))``.

    rho on the right leg is two-sided; each tau on the right leg crosses to
    the left leg as ``tau + rho tau_0``.
    """
    acc: set = set()
    for al, bl, left, ar, br, right in raw:
        if ar == 0:
            toggle(acc, (al, bl + br, (left, right)))
            continue
        for a, b, m in eta_right_tau_power(ar, [(al, bl + br, left)]):
            toggle(acc, (a, b, (m, right)))
    return acc


def tensor_canonicalize(raw: Iterable[tuple]) -> TensorElement:
    """Accepts ``(left_coeff, left_mono, right_coeff, right_mono)`` quadruples."""
    flat = []
    for lc, left, rc, right in raw:
        for al, bl in lc.monos:
            for ar, br in rc.monos:
                flat.append((al, bl, left, ar, br, right))
    return TensorElement.from_parity(canonicalize_parity(flat))


def tensor_mul_parity(u: Iterable[tuple], v: Iterable[tuple]) -> set:
    v = list(v)
    acc: set = set()
    for a1, b1, (l1, r1) in u:
        for a2, b2, (l2, r2) in v:
            lefts = _mono_mul(l1, l2)
            rights = _mono_mul(r1, r2)
            for ar, br, rm in rights:
                for al, bl, lm in lefts:
                    if ar == 0:
                        toggle(acc, (a1 + a2 + al, b1 + b2 + bl + br, (lm, rm)))
                        continue
                    for a, b, m in eta_right_tau_power(
                        ar, [(a1 + a2 + al, b1 + b2 + bl + br, lm)]
                    ):
                        toggle(acc, (a, b, (m, rm)))
    return acc


def tensor_mul(u: TensorElement, v: TensorElement) -> TensorElement:
    return TensorElement.from_parity(tensor_mul_parity(u.parity(), v.parity()))


def _gen_coproduct_parity(kind: str, k: int) -> tuple:
    terms = []
    if kind == "tau":
        terms.append((0, 0, (UNIT, (unit_seq(1, k), ()))))
        for i in range(k + 1):
            right = ((), unit_seq(1 << i, k - i)) if k - i else UNIT
            terms.append((0, 0, ((unit_seq(1, i), ()), right)))
    elif kind == "xi":
        for i in range(k + 1):
            left = ((), unit_seq(1, i)) if i else UNIT
            right = ((), unit_seq(1 << i, k - i)) if k - i else UNIT
            terms.append((0, 0, (left, right)))
    else:
        raise ValueError(f"kind must be 'tau' or 'xi', not {kind!r}")
    return tuple(terms)


def coproduct_gen(kind: str, k: int) -> TensorElement:
    if kind == "xi" and k == 0:
        return TensorElement.basis((UNIT, UNIT))
    return TensorElement.from_parity(_gen_coproduct_parity(kind, k))


@lru_cache(maxsize=None)
def _coproduct_brute(mono: tuple) -> frozenset:
    e, r = mono
    if mono == UNIT:
        return frozenset({(0, 0, (UNIT, UNIT))})
    if any(e):
        i = max(i for i, x in enumerate(e) if x)
        rest = (canon(e[:i]), r)
        gen = _gen_coproduct_parity("tau", i)
    else:
        j = len(r) - 1
        rest = (e, canon(r[:j] + (r[j] - 1,)))
        gen = _gen_coproduct_parity("xi", j)
    return frozenset(tensor_mul_parity(_coproduct_brute(rest), gen))


def coproduct_mono_bruteforce(mono) -> TensorElement:
    """psi(tau(E) xi(R)) as a product of generator coproducts."""
    return TensorElement.from_parity(_coproduct_brute(dual_mono(*mono)))


def coproduct_parity(mono) -> frozenset:
    return _coproduct_brute(mono)


def coproduct(x: DualElement) -> TensorElement:
    """psi extended left-linearly (psi(tau) = tau (1⊗1))."""
    acc: set = set()
    for a, b, m in x.parity():
        for a2, b2, key in _coproduct_brute(m):
            toggle(acc, (a + a2, b + b2, key))
    return TensorElement.from_parity(acc)


# ---------------------------------------------------------------------------
# Hopf algebroid axioms


def coassoc_sides(mono) -> tuple[set, set]:
    """Both sides of coassociativity as parity sets of ``(a, b, (L, M, R))``."""
    psi = _coproduct_brute(mono)
    lhs: set = set()
    rhs: set = set()
    for a, b, (left, right) in psi:
        for a2, b2, (l1, l2) in _coproduct_brute(left):
            toggle(lhs, (a + a2, b + b2, (l1, l2, right)))
        for a2, b2, (m1, m2) in _coproduct_brute(right):
            # coefficient of psi(right) sits on the middle leg; cross to the left
            for a3, b3, lm in eta_right_tau_power(a2, [(a, b + b2, left)]):
                toggle(rhs, (a3, b3, (lm, m1, m2)))
    return lhs, rhs


def counit_sides(mono) -> tuple[set, set]:
    """``(eps ⊗ id) psi(m)`` and ``(id ⊗ eps) psi(m)`` as parity sets."""
    left_side: set = set()
    right_side: set = set()
    for a, b, (left, right) in _coproduct_brute(mono):
        if left == UNIT:
            toggle(left_side, (a, b, right))
        if right == UNIT:
            toggle(right_side, (a, b, left))
    return left_side, right_side


def basis_up_to(max_p: int, max_index: Optional[int] = None) -> list:
    """All dual monomials tau(E) xi(R) of topological degree <= max_p, canonically sorted."""
    taus = []
    i = 0
    while (2 << i) - 1 <= max_p:
        taus.append(i)
        i += 1
    xis = []
    j = 1
    while (2 << j) - 2 <= max_p:
        xis.append(j)
        j += 1
    out = []

    def rec_xi(idx, budget, r):
        if idx == len(xis):
            yield canon(r)
            return
        j = xis[idx]
        d = (2 << j) - 2
        for k in range(budget // d + 1):
            yield from rec_xi(idx + 1, budget - k * d, r + [k])

    def rec_tau(idx, budget, e):
        if idx == len(taus):
            for r in rec_xi(0, budget, [0]):
                out.append((canon(e), r))
            return
        d = (2 << taus[idx]) - 1
        yield_opts = [0, 1] if d <= budget else [0]
        for x in yield_opts:
            rec_tau(idx + 1, budget - x * d, e + [x])

    rec_tau(0, max_p, [])
    out.sort(key=mono_sort_key)
    return out
