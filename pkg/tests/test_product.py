import random

import pytest
from hypothesis import given, settings, strategies as st

from motivic_milnor.coefficients import RHO, TAU, EvalProfile
from motivic_milnor.dual import basis_up_to
from motivic_milnor.errors import CorruptTable, IOFailure, VersionMismatch
from motivic_milnor.product import (
    OpElement,
    bidegree,
    element_mul,
    oracle_products,
    p_of,
    product_oracle,
    q_i,
    qp,
    qp_mul_basis,
    qp_mul_full,
    qp_mul_full_direct,
    qp_mul_tau,
    scalar,
    unit,
)
from motivic_milnor.sequences import Bidegree
from motivic_milnor.table import (
    constants_table,
    dumps_table,
    load_table,
    loads_table,
    save_table,
)

Q0, Q1 = q_i(0), q_i(1)
ZERO_OP = OpElement()


def test_constructors():
    assert Q0 == qp((1,), ())
    assert p_of((0, 2)) == qp((), (0, 2))
    assert str(p_of((0, 2))) == "P(2)"
    assert unit() == qp((), ())
    assert str(unit()) == "1"


def test_q_identities():
    assert qp_mul_basis((1,), (), (1,), ()) == ZERO_OP
    assert qp_mul_basis((1,), (), (0, 1), ()) == qp((1, 1))
    assert Q1 * Q0 == Q0 * Q1


def test_p1_squared():
    # Sq^2 Sq^2 = Sq^3 Sq^1 classically; motivically a tau appears
    got = qp_mul_basis((), (0, 1), (), (0, 1))
    assert got == TAU * qp((1, 1))
    assert got.evaluate(EvalProfile.CLASSICAL) == Q0 * Q1


def test_unit_is_two_sided():
    for key in basis_up_to(8):
        x = OpElement.basis(key)
        assert unit() * x == x
        assert x * unit() == x


def test_qp_mul_tau_examples():
    for key in basis_up_to(6):
        assert qp_mul_tau(*key, 0) == OpElement.basis(key)
    assert qp_mul_tau((1,), (), 1) == TAU * Q0 + scalar(RHO)
    assert qp_mul_tau((), (), 3) == scalar(TAU ** 3)


def test_qp_mul_full_examples():
    for x in basis_up_to(5):
        for y in basis_up_to(5):
            assert qp_mul_full(*x, 0, *y) == qp_mul_basis(*x, *y)
    assert qp_mul_full((1,), (), 1, (), ()) == TAU * Q0 + scalar(RHO)
    q0_tau_q0 = qp_mul_full((1,), (), 1, (1,), ())
    assert q0_tau_q0 == RHO * Q0
    assert q0_tau_q0 == element_mul(TAU * Q0 + scalar(RHO), Q0)


def test_direct_double_sum_examples():
    assert qp_mul_full_direct((1,), (), 1, (1,), ()) == RHO * Q0
    assert qp_mul_full_direct((), (0, 1), 2, (), (0, 1)) == qp_mul_full((), (0, 1), 2, (), (0, 1))


def test_element_mul_examples():
    assert element_mul(RHO * Q0, Q1) == element_mul(Q0, RHO * Q1) == RHO * qp((1, 1))
    assert Q0 * TAU == TAU * Q0 + scalar(RHO)


def test_oracle_examples():
    assert product_oracle((1,), (), 0, (0, 1), ()) == qp((1, 1))
    assert product_oracle((1,), (), 1, (), ()) == TAU * Q0 + scalar(RHO)
    assert product_oracle((), (), 0, (), ()) == unit()
    assert product_oracle((), (0, 1), 0, (), (0, 1)) == TAU * qp((1, 1))


def test_bidegree_examples():
    assert bidegree(Q0) == Bidegree(1, 0)
    assert bidegree(TAU * Q0 + scalar(RHO)) == Bidegree(1, 1)
    assert bidegree(Q0 + Q1) is None
    assert (TAU * Q0).bidegree() == Bidegree(1, 1)


def test_text_order():
    assert str(TAU * Q0 + scalar(RHO)) == "tau Q(1) + rho"
    assert str(ZERO_OP) == "0"


SMALL = basis_up_to(10)
terms = st.tuples(st.integers(0, 2), st.integers(0, 2), st.sampled_from(SMALL)).map(
    lambda t: OpElement.basis(t[2], TAU ** t[0] * RHO ** t[1])
)


@settings(max_examples=50, deadline=None)
@given(terms, terms)
def test_left_tau_is_global(x, y):
    assert element_mul(TAU * x, y) == TAU * element_mul(x, y)


@settings(max_examples=50, deadline=None)
@given(terms, terms)
def test_right_tau_defect_is_rho_divisible(x, y):
    defect = element_mul(x, TAU * y) + TAU * element_mul(x, y)
    assert defect.evaluate(EvalProfile.RHO_ZERO) == ZERO_OP


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(basis_up_to(7)), st.integers(0, 2), st.sampled_from(basis_up_to(7)))
def test_closed_forms_match_oracle(x, n, y):
    want = product_oracle(*x, n, *y)
    assert qp_mul_full(*x, n, *y) == want
    assert qp_mul_full_direct(*x, n, *y) == want


# ---------------------------------------------------------------------------
# tables


@pytest.fixture(scope="module")
def table4():
    return constants_table(4)


def test_table_small(table4):
    t1 = constants_table(1)
    q0 = ((1,), ())
    assert t1[(q0, q0)] == ZERO_OP
    assert table4[(((), (0, 1)), ((), (0, 1)))] == TAU * qp((1, 1))


def test_table_round_trip(table4, tmp_path):
    path = tmp_path / "t.txt"
    save_table(table4, path)
    assert load_table(path, spot_check=1.0) == table4
    text = path.read_text(encoding="utf-8")
    assert text.startswith("motivic-milnor-constants v1 maxp=4\n")
    assert "()|(0,1)*()|(0,1) := tau Q(1,1)" in text
    assert dumps_table(loads_table(text)) == text


def _replace_line(text, key, value):
    lines = text.split("\n")
    for i, line in enumerate(lines):
        if line.startswith(key + " := "):
            lines[i] = f"{key} := {value}"
            return "\n".join(lines)
    raise AssertionError(key)


def test_table_tamper_detected(table4):
    text = dumps_table(table4)
    key = "()|(0,1)*()|(0,1)"
    with pytest.raises(CorruptTable):
        loads_table(_replace_line(text, key, "Q(1)"))  # wrong degree
    with pytest.raises(CorruptTable):
        loads_table(_replace_line(text, key, "0"), spot_check=1.0)  # right shape, wrong value
    with pytest.raises(CorruptTable):
        loads_table(text.replace(key + " := tau Q(1,1)\n", ""))  # missing entry
    with pytest.raises(CorruptTable):
        loads_table(_replace_line(text, key, "Q(("))
    with pytest.raises(CorruptTable):
        loads_table("junk\n")


def test_table_version_mismatch(table4):
    text = dumps_table(table4).replace(" v1 ", " v2 ", 1)
    with pytest.raises(VersionMismatch):
        loads_table(text)


def test_table_spot_check_is_random_sample(table4):
    text = dumps_table(table4)
    bad = _replace_line(text, "()|(0,1)*()|(0,1)", "0")
    caught = 0
    for seed in range(40):
        try:
            loads_table(bad, spot_check=0.25, rng=random.Random(seed))
        except CorruptTable:
            caught += 1
    assert 0 < caught < 40


def test_table_io_failure(tmp_path):
    with pytest.raises(IOFailure):
        load_table(tmp_path / "missing.txt")
    with pytest.raises(IOFailure):
        save_table(constants_table(1), tmp_path / "no" / "such" / "dir.txt")


def test_batch_oracle_matches_single_oracle():
    batch = oracle_products(6, 2)
    basis = basis_up_to(6)
    for x in basis:
        for n in range(3):
            for y in basis:
                want = product_oracle(*x, n, *y).parity()
                assert set(batch.get((x, n, y), ())) == want, (x, n, y)
