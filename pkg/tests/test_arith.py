import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcas.arith import (addero, bound_timeso, build_num, expo, full_addero, gt1o,
                          minuso, odd_timeso, pluso, poso, timeso)
from relcas.kanren import eq, fresh, run
from relcas.terms import NIL, ReifiedVar, lst, to_pylist

from oracles import bits_value

B = build_num


def canonical(n):
    items = to_pylist(n)
    return items is not None and all(b in (0, 1) for b in items) and (not items or items[-1] == 1)


def values(answers):
    return sorted(bits_value(a) for a in answers)


@pytest.mark.parametrize("n, bits", [(0, NIL), (5, lst(1, 0, 1)), (12, lst(0, 0, 1, 1)),
                                     (1, lst(1)), (2, lst(0, 1))])
def test_build_num(n, bits):
    assert B(n) == bits


def test_build_num_rejects_negative():
    with pytest.raises(ValueError):
        B(-1)


def test_full_adder_table():
    for b in (0, 1):
        for x in (0, 1):
            for y in (0, 1):
                got = run(None, lambda r, c: full_addero(b, x, y, r, c))
                assert got == [lst((b + x + y) % 2, (b + x + y) // 2)]


def test_full_adder_backward_enumerates_rows():
    assert len(run(None, lambda q: fresh(lambda b, x, y, r, c: [
        full_addero(b, x, y, r, c), eq(q, lst(b, x, y, r, c))]))) == 8


# -- pluso / minuso --------------------------------------------------------------------

def test_pluso_forward():
    assert run(None, lambda q: pluso(B(3), B(1), q)) == [lst(0, 0, 1)]


def test_pluso_zero_identity():
    assert run(None, lambda q: pluso(NIL, B(9), q)) == [B(9)]


def test_pluso_splits_five_six_ways():
    got = run(None, lambda a, b: pluso(a, b, B(5)))
    assert sorted((bits_value(a), bits_value(b)) for a, b in map(to_pylist, got)) == \
        [(i, 5 - i) for i in range(6)]


def test_addero_with_carry():
    assert run(None, lambda q: addero(1, B(6), B(7), q)) == [B(14)]


def test_minuso():
    assert run(None, lambda q: minuso(B(4), B(1), q)) == [lst(1, 1)]
    assert run(None, lambda q: minuso(B(7), NIL, q)) == [B(7)]
    assert run(None, lambda q: minuso(B(1), B(2), q)) == []


# -- timeso ----------------------------------------------------------------------------

def test_timeso_forward():
    assert run(None, lambda q: timeso(B(2), B(3), q)) == [lst(0, 1, 1)]


def test_timeso_identity():
    assert run(None, lambda q: timeso(B(11), B(1), q)) == [B(11)]


def test_timeso_factor_pairs_of_six():
    got = run(None, lambda a, b: timeso(a, b, B(6)))
    pairs = sorted((bits_value(a), bits_value(b)) for a, b in map(to_pylist, got))
    assert pairs == [(1, 6), (2, 3), (3, 2), (6, 1)]


def test_timeso_ground_check():
    assert run(None, lambda q: timeso(B(5), B(7), B(35))) == [ReifiedVar(0)]
    assert run(None, lambda q: timeso(B(5), B(7), B(36))) == []


def test_odd_timeso_direct():
    # n = 2x + 1 with x = 2, so n = 5
    assert run(None, lambda p: odd_timeso(B(2), B(5), B(3), p)) == [B(15)]


def test_bound_timeso_limits_length():
    assert run(None, lambda q: bound_timeso(NIL, B(1), NIL, NIL)) == [ReifiedVar(0)]
    assert run(None, lambda q: bound_timeso(B(4), B(1), NIL, NIL)) == []


# -- poso / gt1o / expo ------------------------------------------------------------------

def test_poso():
    assert run(None, lambda q: poso(B(1))) == [ReifiedVar(0)]
    assert run(None, lambda q: poso(NIL)) == []
    assert run(None, lambda q: poso(q)) == [(ReifiedVar(0), ReifiedVar(1))]


def test_gt1o():
    assert run(None, lambda q: gt1o(B(2))) == [ReifiedVar(0)]
    assert run(None, lambda q: gt1o(B(1))) == []


def test_expo_examples():
    assert run(None, lambda q: expo(B(2), B(3), q)) == [lst(0, 0, 0, 1)]
    assert run(None, lambda q: expo(NIL, NIL, q)) == [lst(1)]
    assert run(None, lambda q: expo(B(9), NIL, q)) == [lst(1)]
    assert run(None, lambda q: expo(NIL, B(1), q)) == [NIL]


# -- oracle properties (a reduced range; the acceptance suite runs [0,64)^2) ----------

small = st.integers(0, 31)


@settings(max_examples=150)
@given(small, small)
def test_pluso_matches_host(a, b):
    assert run(None, lambda q: pluso(B(a), B(b), q)) == [B(a + b)]


@settings(max_examples=150)
@given(small, small)
def test_minuso_matches_host(a, b):
    got = run(None, lambda q: minuso(B(a), B(b), q))
    assert got == ([B(a - b)] if a >= b else [])


@settings(max_examples=100)
@given(st.integers(0, 15), st.integers(0, 15))
def test_timeso_matches_host(a, b):
    assert run(None, lambda q: timeso(B(a), B(b), q)) == [B(a * b)]


@settings(max_examples=150)
@given(small, small)
def test_pluso_backward(b, c):
    got = run(None, lambda q: pluso(q, B(b), B(c)))
    assert got == ([B(c - b)] if c >= b else [])


@settings(max_examples=60)
@given(st.integers(0, 20))
def test_pluso_enumeration_is_complete_and_canonical(c):
    got = run(None, lambda a, b: pluso(a, b, B(c)))
    pairs = [to_pylist(p) for p in got]
    assert all(canonical(x) for p in pairs for x in p)
    assert sorted((bits_value(a), bits_value(b)) for a, b in pairs) == \
        [(i, c - i) for i in range(c + 1)]


@settings(max_examples=40)
@given(st.integers(1, 24))
def test_timeso_factorizations(c):
    got = run(None, lambda a, b: timeso(a, b, B(c)))
    pairs = sorted((bits_value(a), bits_value(b)) for a, b in map(to_pylist, got))
    assert pairs == [(d, c // d) for d in range(1, c + 1) if c % d == 0]
