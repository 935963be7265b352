"""Milnor matrices, their functionals, and the closed-form coproduct.

A matrix is a dict ``{(row, col): value}`` without zero entries.  For an
``X`` matrix the entry ``x[i, j]`` stands for ``(xi_i ⊗ xi_j^(2^i))^x``; for a
``Y`` matrix ``y[i, j] = 1`` means ``tau_{i+j}`` contributed ``tau_i ⊗ xi_j^(2^i)``.

Index-0 conventions (xi_0 = 1 but tau_0 != 1):

* ``x[0, 0]`` is always 0;
* ``S(X)_0``, ``R(X)_0`` and ``R(Y)_0`` are exponents of xi_0 and are ignored;
* ``S(Y)_0`` counts tau_0 factors on the left leg and is kept, so
  ``y[0, 0]`` (the summand ``tau_0 ⊗ 1``) is allowed.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .dual import TensorElement, _simplify_closed, toggle
from .sequences import (
    binom_seq_mod2,
    canon,
    drop_zeroth,
    is_seqe,
    multinomial_mod2,
    nsum,
    seq_add,
    seq_leq,
    seq_sub,
    wsum,
)

Matrix = Mapping[tuple[int, int], int]


def matrix(entries: Mapping[tuple[int, int], int]) -> dict:
    out = {}
    for (i, j), v in entries.items():
        if v < 0:
            raise ValueError(f"negative matrix entry at {(i, j)}")
        if v:
            out[(i, j)] = v
    return out


def t_func(x: Matrix):
    """Anti-diagonal sums: ``T(X)_r = sum_i x[i, r-i]``."""
    acc: dict = {}
    for (i, j), v in x.items():
        acc[i + j] = acc.get(i + j, 0) + v
    return _dense(acc)


def r_func(x: Matrix):
    """Weighted column sums: ``R(X)_r = sum_i 2^i x[i, r]``."""
    acc: dict = {}
    for (i, j), v in x.items():
        acc[j] = acc.get(j, 0) + (v << i)
    return _dense(acc)


def s_func(x: Matrix):
    """Row sums: ``S(X)_r = sum_i x[r, i]``."""
    acc: dict = {}
    for (i, j), v in x.items():
        acc[i] = acc.get(i, 0) + v
    return _dense(acc)


def _dense(acc: dict):
    if not acc:
        return ()
    out = [0] * (max(acc) + 1)
    for k, v in acc.items():
        out[k] = v
    return canon(out)


def antidiagonals(x: Matrix) -> dict:
    diags: dict = {}
    for (i, j), v in x.items():
        diags.setdefault(i + j, []).append(v)
    return diags


def b_func(x: Matrix) -> int:
    """Product over anti-diagonals of the multinomial coefficient, mod 2."""
    for parts in antidiagonals(x).values():
        if not multinomial_mod2(parts):
            return 0
    return 1


def is_y_matrix(y: Matrix) -> bool:
    if any(v not in (0, 1) for v in y.values()):
        return False
    return all(len([v for v in d if v]) <= 1 for d in antidiagonals(y).values())


def compositions(n: int, parts: int) -> Iterator[tuple]:
    """All ordered ways to write ``n`` as a sum of ``parts`` naturals."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def _y_choices(e) -> Iterator[dict]:
    # one optional cell on each anti-diagonal k with e_k = 1
    ks = [k for k, v in enumerate(e) if v]

    def rec(idx, acc):
        if idx == len(ks):
            yield dict(acc)
            return
        k = ks[idx]
        yield from rec(idx + 1, acc)
        for i in range(k + 1):
            acc[(i, k - i)] = 1
            yield from rec(idx + 1, acc)
            del acc[(i, k - i)]

    yield from rec(0, {})


def _x_with_t(t) -> Iterator[dict]:
    ks = [k for k, v in enumerate(t) if v and k >= 1]

    def rec(idx, acc):
        if idx == len(ks):
            yield dict(acc)
            return
        k = ks[idx]
        for comp in compositions(t[k], k + 1):
            cells = [((i, k - i), v) for i, v in enumerate(comp) if v]
            for cell, v in cells:
                acc[cell] = v
            yield from rec(idx + 1, acc)
            for cell, _ in cells:
                del acc[cell]

    yield from rec(0, {})


def coproduct_closed_parity(e, t) -> set:
    acc: set = set()
    xs = [(x, s_func(x), r_func(x), b_func(x)) for x in _x_with_t(t)]
    for y in _y_choices(e):
        ty = t_func(y)
        e_right = seq_sub(e, ty)
        coeff = binom_seq_mod2(e, e_right) & b_func(y)
        if not coeff:
            continue
        sy, ry = s_func(y), r_func(y)
        simplified = _simplify_closed(sy)
        for x, sx, rx, bx in xs:
            if not bx:
                continue
            right = (e_right, drop_zeroth(seq_add(ry, rx)))
            xi_left = drop_zeroth(sx)
            for a, b, (e1, s_prime) in simplified:
                left = (e1, seq_add(s_prime, xi_left))
                toggle(acc, (a, b, (left, right)))
    return acc


def coproduct_mono_closed(e, t) -> TensorElement:
    """psi(tau(E) xi(T)) by summing over matrix pairs (Y, X)."""
    from .dual import dual_mono

    e, t = dual_mono(e, t)
    return TensorElement.from_parity(coproduct_closed_parity(e, t))


# ---------------------------------------------------------------------------
# matrix pairs contributing to a product Q(E1)P(R1) * Q(E2)P(R2)


def _at(s, i: int) -> int:
    return s[i] if i < len(s) else 0


def product_pair_ok(y: Matrix, x: Matrix, e1, r1, e2, r2) -> bool:
    """The raw summation conditions for one pair, with the index-0 conventions."""
    if x.get((0, 0), 0) or not is_y_matrix(y):
        return False
    rsum = drop_zeroth(seq_add(r_func(y), r_func(x)))
    if rsum != drop_zeroth(r2):
        return False
    sx = drop_zeroth(s_func(x))
    if not seq_leq(sx, r1):
        return False
    d = drop_zeroth(seq_sub(r1, sx))
    if wsum(e1) + wsum(d) != wsum(s_func(y)):
        return False
    return is_seqe(seq_add(e2, t_func(y)))


def _product_y(e1, r1, e2, r2) -> Iterator[dict]:
    budget = wsum(e1) + wsum(r1)  # bound for wsum S(Y)
    cells_by_k: dict = {}
    for j in range(1, len(r2)):
        i = 0
        while (1 << i) <= r2[j]:
            cells_by_k.setdefault(i + j, []).append((i, j))
            i += 1
    i = 0
    while (1 << i) <= budget:
        cells_by_k.setdefault(i, []).append((i, 0))
        i += 1
    ks = sorted(k for k in cells_by_k if not _at(e2, k))
    ry = [0] * max(len(r2), 1)

    def rec(idx, acc, wy):
        if idx == len(ks):
            yield dict(acc)
            return
        yield from rec(idx + 1, acc, wy)
        for i, j in cells_by_k[ks[idx]]:
            w = 1 << i
            if wy + w > budget:
                continue
            if j:
                if ry[j] + w > r2[j]:
                    continue
                ry[j] += w
            acc[(i, j)] = 1
            yield from rec(idx + 1, acc, wy + w)
            del acc[(i, j)]
            if j:
                ry[j] -= w

    yield from rec(0, {}, 0)


def _product_x(cols: list, r1, target: int) -> Iterator[dict]:
    """X with R(X)_j = cols[j] (j >= 1), S(X)_i <= r1_i (i >= 1),
    and sum_{i >= 1} 2^i S(X)_i = target."""
    rows = list(range(1, len(r1)))
    rowsum = [0] * max(len(r1), 1)
    js = [j for j in range(1, len(cols)) if cols[j]]

    def fill_column(jdx, acc):
        if jdx == len(js):
            yield from fill_zero_column(acc)
            return
        j = js[jdx]

        def rec(k, remaining):
            if k == len(rows):
                if remaining:
                    acc[(0, j)] = remaining
                yield from fill_column(jdx + 1, acc)
                acc.pop((0, j), None)
                return
            i = rows[k]
            top = min(remaining >> i, r1[i] - rowsum[i])
            for v in range(top + 1):
                if v:
                    acc[(i, j)] = v
                rowsum[i] += v
                yield from rec(k + 1, remaining - (v << i))
                rowsum[i] -= v
                acc.pop((i, j), None)

        yield from rec(0, cols[j])

    def fill_zero_column(acc):
        need = target - sum(rowsum[i] << i for i in rows)
        if need < 0:
            return

        def rec(k, need):
            if k < 0:
                if need == 0:
                    yield dict(acc)
                return
            i = rows[k]
            top = min(need >> i, r1[i] - rowsum[i])
            for v in range(top, -1, -1):
                if v:
                    acc[(i, 0)] = v
                yield from rec(k - 1, need - (v << i))
                acc.pop((i, 0), None)

        yield from rec(len(rows) - 1, need)

    yield from fill_column(0, {})


def enumerate_product_matrices(e1, r1, e2, r2) -> Iterator[tuple[dict, dict]]:
    """All pairs (Y, X) contributing to Q(E1)P(R1) * Q(E2)P(R2)."""
    for y in _product_y(e1, r1, e2, r2):
        ry = r_func(y)
        cols = [0] + [r2[j] - _at(ry, j) for j in range(1, len(r2))]
        target = wsum(r1) + wsum(e1) - wsum(s_func(y))
        if target < 0:
            continue
        for x in _product_x(cols, r1, target):
            yield y, x


def d_seq(r1, sx):
    """``R1 - S(X)`` on indices >= 1, with index 0 forced to zero."""
    return drop_zeroth(seq_sub(r1, drop_zeroth(sx)))


def nsum_from1(s) -> int:
    return nsum(s) - (s[0] if s else 0)
