"""Invariant suites run by ``motivic-milnor verify``.

Each check returns a :class:`CheckResult`; a failing check carries the
first counterexample found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .coefficients import EvalProfile
from .dual import (
    UNIT,
    _simplify_closed,
    _simplify_tree,
    _tree,
    basis_up_to,
    c_coeff,
    coassoc_sides,
    counit_sides,
    coproduct_parity,
    mono_bidegree,
    mul_parity as dual_mul_parity,
)
from .matrices import coproduct_closed_parity
from .product import (
    _qp_mul_full,
    _qp_mul_full_direct,
    eval_parity,
    mul_parity,
    oracle_products,
)
from .sequences import Bidegree, bidegree_of_basis, canon, nsum, wsum

SUITES = ("tree", "coproduct", "product", "axioms")


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    counterexample: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.counterexample}" if self.counterexample else ""
        return f"{status} {self.name} ({self.cases} cases){tail}"


def _run(name: str, cases: Iterator, check: Callable) -> CheckResult:
    n = 0
    for case in cases:
        n += 1
        problem = check(case)
        if problem:
            return CheckResult(name, False, n, f"{case!r}: {problem}")
    return CheckResult(name, True, n)


# ---------------------------------------------------------------------------
# tree suite


def tree_range(max_nsum: int = 8, width: int = 4) -> Iterator[tuple]:
    for entries in itertools.product(range(max_nsum + 1), repeat=width):
        if sum(entries) <= max_nsum:
            yield canon(entries)


def _all_r(limit_w: int, width: int) -> Iterator[tuple]:
    def rec(i, budget, acc):
        if i == width:
            yield canon(acc)
            return
        for x in range((budget >> i) + 1):
            yield from rec(i + 1, budget - (x << i), acc + [x])
    yield from rec(0, limit_w, [])


def check_tree_vs_closed(s) -> Optional[str]:
    leaves = _tree(s)
    width = max(wsum(s).bit_length(), 1) + 1
    for r in _all_r(wsum(s), width):
        count = sum(k for (e, rr), k in leaves.items() if rr == r)
        if count % 2 != c_coeff(s, r):
            return f"R={r}: tree count {count}, c={c_coeff(s, r)}"
    for (e, r), k in leaves.items():
        if wsum(e) + wsum(r) != wsum(s):
            return f"weight mismatch at leaf {(e, r)}"
    if set(_simplify_tree(s)) != set(_simplify_closed(s)):
        return "tree and closed-form simplifications differ"
    return None


def check_partial_sum_bound(s) -> Optional[str]:
    for r in _all_r(wsum(s), max(wsum(s).bit_length(), 1) + 1):
        if not c_coeff(s, r):
            continue
        if r and r[0]:
            return f"c != 0 with r_0 > 0 at R={r}"
        for n in range(len(r) + 1):
            lhs = sum((s[i] << i) for i in range(min(n, len(s))))
            rhs = sum((r[i] << i) for i in range(1, min(n, len(r) - 1) + 1))
            if lhs < rhs:
                return f"partial-sum bound fails at n={n}, R={r}"
    return None


def check_simplify_homogeneous(s) -> Optional[str]:
    want = bidegree_of_basis(s, ())
    for a, b, (e, r) in _simplify_closed(s):
        got = bidegree_of_basis(e, r) + Bidegree(-b, -a - b)
        if got != want:
            return f"term tau^{a} rho^{b} {(e, r)} has degree {got}, want {want}"
        if b < 0 or nsum(s) - nsum(e) - 2 * nsum(r) != b:
            return "rho exponent bookkeeping"
    return None


def suite_tree(max_degree: int = 0) -> list:
    cases = list(tree_range())
    return [
        _run("tree mod 2 == c(S,R)", iter(cases), check_tree_vs_closed),
        _run("c(S,R) != 0 partial-sum bound", iter(cases), check_partial_sum_bound),
        _run("tau(S) expansion homogeneous", iter(cases), check_simplify_homogeneous),
    ]


# ---------------------------------------------------------------------------
# coproduct suite


def suite_coproduct(max_degree: int) -> list:
    def check(m):
        if coproduct_closed_parity(*m) != coproduct_parity(m):
            return "closed form differs from brute force"
        return None

    return [_run(f"closed coproduct == brute force (deg <= {max_degree})",
                 iter(basis_up_to(max_degree)), check)]


# ---------------------------------------------------------------------------
# product suite


def product_cases(max_degree: int, max_n: int = 2) -> Iterator[tuple]:
    basis = basis_up_to(max_degree)
    for x in basis:
        for y in basis:
            for n in range(max_n + 1):
                yield (x, n, y)


def suite_product(max_degree: int, max_n: int = 2) -> list:
    oracle = oracle_products(max_degree, max_n)

    def check_oracle(case):
        x, n, y = case
        got = _qp_mul_full(*x, n, *y)
        if got != oracle.get(case, frozenset()):
            return f"closed {sorted(got)} vs oracle {sorted(oracle.get(case, ()))}"
        return None

    def check_direct(case):
        x, n, y = case
        if set(_qp_mul_full(*x, n, *y)) != _qp_mul_full_direct(*x, n, *y):
            return "composed and direct double sum differ"
        return None

    def check_homogeneous(case):
        x, n, y = case
        want = mono_bidegree(x) + mono_bidegree(y) + Bidegree(0, n)
        for a, b, key in _qp_mul_full(*x, n, *y):
            got = mono_bidegree(key) + Bidegree(b, a + b)
            if got != want:
                return f"term {key} has degree {got}, want {want}"
        return None

    return [
        _run(f"closed product == oracle (deg <= {max_degree}, n <= {max_n})",
             product_cases(max_degree, max_n), check_oracle),
        _run("composed == direct double sum",
             product_cases(max_degree, max_n), check_direct),
        _run("products homogeneous", product_cases(max_degree, max_n), check_homogeneous),
    ]


# ---------------------------------------------------------------------------
# axioms suite


def random_term(rng: random.Random, basis: list, max_coeff: int = 2) -> set:
    return {(rng.randint(0, max_coeff), rng.randint(0, max_coeff), rng.choice(basis))}


def _q(e) -> set:
    return {(0, 0, (canon(e), ()))}


def check_q_identities(max_index: int = 4) -> CheckResult:
    n = 0
    for i in range(max_index + 1):
        qi = _q([0] * i + [1])
        for j in range(max_index + 1):
            qj = _q([0] * j + [1])
            n += 1
            if mul_parity(qi, qj) != mul_parity(qj, qi):
                return CheckResult("Q_i Q_j = Q_j Q_i", False, n, f"i={i}, j={j}")
        if mul_parity(qi, qi):
            return CheckResult("Q_i^2 = 0", False, n, f"i={i}")
    for e in itertools.product((0, 1), repeat=max_index + 1):
        support = [i for i, v in enumerate(e) if v]
        for order in itertools.permutations(support):
            n += 1
            acc = {(0, 0, UNIT)}
            for i in order:
                acc = mul_parity(acc, _q([0] * i + [1]))
            if acc != _q(e):
                return CheckResult("prod Q_i = Q(E)", False, n, f"order {order}")
    return CheckResult("Q_i^2 = 0, Q_i Q_j = Q_j Q_i, prod Q_i = Q(E)", True, n)


def suite_axioms(max_degree: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    results = [check_q_identities()]
    small = basis_up_to(min(max_degree, 12))

    triples = [tuple(random_term(rng, small) for _ in range(3)) for _ in range(200)]

    def check_assoc(t):
        x, y, z = t
        if mul_parity(mul_parity(x, y), z) != mul_parity(x, mul_parity(y, z)):
            return "(xy)z != x(yz)"
        return None

    results.append(_run("associativity (200 random triples)", iter(triples), check_assoc))

    def check_dual_ring(t):
        x, y, z = t
        if dual_mul_parity(x, y) != dual_mul_parity(y, x):
            return "dual product not commutative"
        if dual_mul_parity(dual_mul_parity(x, y), z) != dual_mul_parity(x, dual_mul_parity(y, z)):
            return "dual product not associative"
        return None

    results.append(_run("dual algebra commutative and associative",
                        iter(triples), check_dual_ring))

    basis = basis_up_to(max_degree)

    def check_coassoc(m):
        lhs, rhs = coassoc_sides(m)
        return None if lhs == rhs else "(psi ⊗ 1) psi != (1 ⊗ psi) psi"

    def check_counit(m):
        left, right = counit_sides(m)
        want = {(0, 0, m)}
        if left != want:
            return f"(eps ⊗ 1) psi = {sorted(left)}"
        if right != want:
            return f"(1 ⊗ eps) psi = {sorted(right)}"
        return None

    results.append(_run(f"coassociativity (deg <= {max_degree})", iter(basis), check_coassoc))
    results.append(_run(f"counit laws (deg <= {max_degree})", iter(basis), check_counit))

    pairs = [(random_term(rng, small), random_term(rng, small)) for _ in range(100)]
    rho = {(0, 1, UNIT)}
    tau = {(1, 0, UNIT)}

    def check_rho_central(p):
        x, y = p
        a = mul_parity(mul_parity(rho, x), y)
        b = mul_parity(rho, mul_parity(x, y))
        c = mul_parity(x, mul_parity(rho, y))
        return None if a == b == c else "rho is not central"

    def check_tau_rho_zero(p):
        x, y = p
        left = eval_parity(mul_parity(x, mul_parity(tau, y)), EvalProfile.RHO_ZERO)
        right = eval_parity(mul_parity(tau, mul_parity(x, y)), EvalProfile.RHO_ZERO)
        return None if left == right else "x(tau y) != tau(xy) mod rho"

    def check_specialize(p):
        x, y = p
        for prof in (EvalProfile.RHO_ZERO, EvalProfile.CLASSICAL):
            direct = eval_parity(mul_parity(x, y), prof)
            pre = eval_parity(mul_parity(eval_parity(x, prof), eval_parity(y, prof)), prof)
            if direct != pre:
                return f"evaluation does not commute with products ({prof.value})"
        return None

    results.append(_run("rho central (100 random pairs)", iter(pairs), check_rho_central))
    results.append(_run("x(tau y) = tau(xy) under rho = 0 (100 random pairs)",
                        iter(pairs), check_tau_rho_zero))
    results.append(_run("specialization commutes with products", iter(pairs), check_specialize))

    q0 = _q([1])
    got = mul_parity(q0, tau)
    want = {(1, 0, ((1,), ())), (0, 1, UNIT)}
    results.append(CheckResult("Q_0 tau = tau Q_0 + rho", got == want, 1,
                               None if got == want else f"got {sorted(got)}"))
    return results


def run_suite(name: str, max_degree: int) -> list:
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s, max_degree))
        return out
    if name == "tree":
        return suite_tree(max_degree)
    if name == "coproduct":
        return suite_coproduct(max_degree)
    if name == "product":
        return suite_product(max_degree)
    if name == "axioms":
        return suite_axioms(max_degree)
    raise ValueError(f"unknown suite {name!r}")
