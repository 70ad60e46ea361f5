import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fib_parts
from nivat.configuration import (
    DoublyPeriodic,
    Layer,
    Reduced,
    Sum,
    detect_periods,
    lattice_hnf,
    verify_periods,
    window,
    window_period_check,
)
from nivat.geometry import rectangle
from nivat.sequences import fibonacci, thue_morse

vec = st.tuples(st.integers(-30, 30), st.integers(-30, 30))


def box(n):
    return [(x, y) for y in range(n) for x in range(n)]


def test_eval_examples(cb, tm, fs):
    assert cb.eval((3, 4)) == 1
    assert tm.eval((5, 99)) == thue_morse()(-5)
    a, b = fib_parts()
    assert fs.eval((0, 0)) == a.eval((0, 0)) + 2 * b.eval((0, 0))


def test_shift_examples(cb, fs):
    w = box(6)
    assert window(cb.shift((0, 0)), w) == window(cb, w)
    shifted = window(cb.shift((1, 0)), w).as_dict()
    assert all(shifted[g] == 1 - cb.eval(g) for g in w)
    assert window(fs.shift((2, 3)).shift((-5, 1)), w) == window(fs.shift((-3, 4)), w)


@settings(max_examples=30, deadline=None)
@given(vec, vec)
def test_shift_group_action(u, v):
    a, b = fib_parts()
    src = Sum([(1, a), (2, b)])
    w = box(8)
    lhs = window(src.shift(u).shift(v), w).as_dict()
    rhs = {g: src.eval((g[0] + u[0] + v[0], g[1] + u[1] + v[1])) for g in w}
    assert lhs == rhs


def test_window_examples(const, cb, fl):
    assert set(window(const, box(3)).values) == {1}
    assert window(cb, rectangle(2, 2).points).values == (0, 1, 1, 0)
    assert window(fl, rectangle(5, 1).points).values == tuple(fibonacci().word(0, 5))


def test_window_period_check(cb):
    p = window(cb, box(4))
    assert window_period_check(p, (1, 1))
    assert not window_period_check(p, (1, 0))
    assert window_period_check(p, (9, 9))


def test_detect_periods(cb, tm, fs):
    found = detect_periods(cb, 2)
    assert {(1, 1), (1, -1), (2, 0)} <= found
    assert detect_periods(tm, 4) == {(0, k) for k in range(-4, 5) if k}
    assert detect_periods(fs, 3) == set()


def test_layer_invariance_and_linearity(fs):
    rng = random.Random(5)
    a, b = fib_parts()
    for _ in range(100):
        g = (rng.randint(-500, 500), rng.randint(-500, 500))
        assert a.eval(g) == a.eval((g[0], g[1] + 1))
        assert fs.eval(g) == a.eval(g) + 2 * b.eval(g)


def test_grid_matches_eval(fs, tm, p32):
    for src in (fs, tm, p32, Reduced(fs, 2)):
        arr = src.grid(-7, 5, -3, 9)
        assert all(arr[y + 3, x + 7] == src.eval((x, y)) for y in range(-3, 9) for x in range(-7, 5))


def test_doubly_periodic_table_checks():
    assert lattice_hnf((1, 1), (1, -1)) == (2, 1, 1)
    with pytest.raises(ValueError):
        DoublyPeriodic((1, 1), (2, 2), [[0]])
    with pytest.raises(ValueError):
        DoublyPeriodic((3, 0), (0, 2), [[0, 1, 2]])
    src = DoublyPeriodic((2, 1), (-1, 3), [[1, 2, 3, 4, 5, 6, 7]])
    assert verify_periods(src)


def test_big_symbols_use_exact_arithmetic():
    huge = Layer((0, 1), fibonacci())
    big = Sum([(2**70, huge)])
    arr = big.grid(0, 4, 0, 1)
    assert arr.dtype == object
    assert [int(v) for v in arr[0]] == [2**70 * huge.eval((x, 0)) for x in range(4)]
    assert np.all(Reduced(big, 3).grid(0, 4, 0, 1) == [[(2**70 * huge.eval((x, 0))) % 3 for x in range(4)]])
