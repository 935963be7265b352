import itertools
import math

import pytest
from hypothesis import given, strategies as st

from motivic_milnor.errors import IndexOverCap, SubUnderflow
from motivic_milnor.sequences import (
    Bidegree,
    bidegree_of_basis,
    binom_mod2,
    binom_seq_mod2,
    canon,
    from_wsum,
    get_cap,
    multinomial_mod2,
    nsum,
    seq_add,
    seq_leq,
    seq_sub,
    set_cap,
    unit_seq,
    wsum,
)

seqs = st.lists(st.integers(0, 20), max_size=8).map(canon)
seqes = st.lists(st.integers(0, 1), max_size=8).map(canon)


@pytest.mark.parametrize(
    "n, i, expected",
    [(1, 2, (0, 0, 1)), (0, 5, ()), (4, 0, (4,))],
)
def test_unit_seq(n, i, expected):
    assert unit_seq(n, i) == expected


def test_unit_seq_over_cap():
    with pytest.raises(IndexOverCap):
        unit_seq(1, get_cap())


def test_cap_is_configurable():
    old = get_cap()
    try:
        set_cap(3)
        with pytest.raises(IndexOverCap):
            from_wsum(8)
        assert from_wsum(7) == (1, 1, 1)
    finally:
        set_cap(old)


@pytest.mark.parametrize("r, w, n", [((2, 1), 4, 3), ((0, 0, 1), 4, 1), ((), 0, 0), ((0, 2), 4, 2)])
def test_wsum_nsum(r, w, n):
    assert wsum(r) == w
    assert nsum(r) == n


@pytest.mark.parametrize(
    "a, b, expected",
    [((0, 1), (0, 2), True), ((1,), (0, 5), False), ((), (3, 1), True)],
)
def test_seq_leq(a, b, expected):
    assert seq_leq(a, b) is expected


def test_add_sub():
    assert seq_add((1,), (0, 1)) == (1, 1)
    assert seq_sub((2, 1), (0, 1)) == (2,)
    with pytest.raises(SubUnderflow):
        seq_sub((1,), (2,))


@pytest.mark.parametrize("w, expected", [(4, (0, 0, 1)), (0, ()), (3, (1, 1))])
def test_from_wsum(w, expected):
    assert from_wsum(w) == expected


def test_binom_mod2_examples():
    assert binom_mod2(2, 1) == 0
    assert binom_mod2(3, 1) == 1
    assert binom_mod2(1, 2) == 0
    assert binom_mod2(-1, 0) == 0


def test_binom_seq_mod2_examples():
    assert binom_seq_mod2((1, 1), (1, 0)) == 1
    assert binom_seq_mod2((2,), (1,)) == 0
    assert binom_seq_mod2((), ()) == 1


def test_multinomial_examples():
    assert multinomial_mod2([1, 1]) == 0
    assert multinomial_mod2([2, 1]) == 1
    assert multinomial_mod2([5]) == 1


def test_binom_mod2_matches_pascal():
    size = 65
    row = [1]
    for m in range(size):
        for n in range(size):
            expected = row[n] if n < len(row) else 0
            assert binom_mod2(m, n) == expected, (m, n)
        row = [1] + [(row[k - 1] + row[k]) % 2 for k in range(1, len(row))] + [1]


def test_multinomial_matches_iterated_binomials_and_factorials():
    for k in range(1, 5):
        for parts in itertools.product(range(16), repeat=k):
            got = multinomial_mod2(parts)
            partial = 0
            iterated = 1
            for p in parts:
                partial += p
                iterated &= binom_mod2(partial, p)
            assert got == iterated, parts
            if k <= 3:
                exact = math.factorial(sum(parts))
                for p in parts:
                    exact //= math.factorial(p)
                assert got == exact % 2, parts


@given(seqs, seqs)
def test_sums_are_additive(a, b):
    assert wsum(seq_add(a, b)) == wsum(a) + wsum(b)
    assert nsum(seq_add(a, b)) == nsum(a) + nsum(b)


@given(seqes)
def test_from_wsum_inverts_wsum(e):
    assert from_wsum(wsum(e)) == e


@given(seqs, seqs)
def test_sub_inverts_add(a, b):
    assert seq_sub(seq_add(a, b), b) == a


@pytest.mark.parametrize(
    "e, r, expected",
    [((1,), (), (1, 0)), ((), (0, 1), (2, 1)), ((0, 1), (0, 1), (5, 2))],
)
def test_bidegree_examples(e, r, expected):
    assert bidegree_of_basis(e, r) == Bidegree(*expected)


@given(seqes, seqes, seqs, seqs)
def test_bidegree_additive(e1, e2, r1, r2):
    e = seq_add(e1, e2)
    if any(x > 1 for x in e):
        return
    assert bidegree_of_basis(e, seq_add(r1, r2)) == (
        bidegree_of_basis(e1, r1) + bidegree_of_basis(e2, r2)
    )
