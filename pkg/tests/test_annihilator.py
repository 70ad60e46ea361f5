import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fib_sum
from nivat.annihilator import (
    ZZ,
    LaurentPoly,
    Ring,
    annihilates,
    apply,
    difference_product,
    find_affine_annihilator,
    format_poly,
    parse_poly,
    reduce_mod,
    reflected_support,
)
from nivat.complexity import is_generated
from nivat.configuration import DoublyPeriodic, checkerboard, constant
from nivat.errors import NoAnnihilatorError
from nivat.geometry import hull, rectangle

F2 = Ring(2)

vecs = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
polys = st.dictionaries(vecs, st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_ring_validation():
    assert str(ZZ) == "Z" and str(F2) == "F_2"
    with pytest.raises(ValueError):
        Ring(4)


def test_format_and_parse():
    phi = difference_product([(1, 0), (0, 1)])
    text = "1*(1,1) - 1*(1,0) - 1*(0,1) + 1*(0,0)"
    assert format_poly(phi) == text
    assert parse_poly(text) == phi
    assert format_poly(LaurentPoly()) == "0"
    assert parse_poly("0") == LaurentPoly()


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == LaurentPoly()


def test_field_reduction():
    p = difference_product([(1, 0)], F2)
    assert p == LaurentPoly({(1, 0): 1, (0, 0): 1}, F2)
    assert reduce_mod(LaurentPoly({(0, 0): 3, (1, 1): 2}), 2) == LaurentPoly.one(F2)
    with pytest.raises(ValueError, match="ring mismatch"):
        LaurentPoly.one() + LaurentPoly.one(F2)


def test_examples(const, cb, fs, tm):
    assert annihilates(difference_product([(1, 0)]), const, 20)
    assert annihilates(difference_product([(1, 1), (1, -1)]), cb, 20)
    assert annihilates(difference_product([(0, 1), (1, 0)]), fs, 20)
    assert annihilates(difference_product([(0, 1)]), tm, 20)
    v = annihilates(difference_product([(1, 0)]), tm, 5)
    assert not v.holds and apply(difference_product([(1, 0)]), tm, v.counterexample[0]) != 0


def test_shift_law():
    rng = random.Random(5)
    src = DoublyPeriodic((3, 0), (0, 2), [[1, 4, 2], [0, 7, 3]])
    for _ in range(20):
        phi = LaurentPoly({(rng.randint(-2, 2), rng.randint(-2, 2)): rng.randint(-3, 3) for _ in range(3)})
        u = (rng.randint(-3, 3), rng.randint(-3, 3))
        g = (rng.randint(-5, 5), rng.randint(-5, 5))
        assert apply(phi.shift(u), src, g) == apply(phi, src, (g[0] - u[0], g[1] - u[1]))


def test_reflected_support():
    s = reflected_support(difference_product([(1, 0), (0, 1)]))
    assert sorted(s.vertices) == [(-1, -1), (-1, 0), (0, -1), (0, 0)]


def test_affine_annihilator_constant():
    a = find_affine_annihilator(constant(1), rectangle(1, 1))
    assert format_poly(a.sigma) == "1*(0,0)" and a.c == 1
    assert format_poly(a.psi) == "1*(1,0) - 1*(0,0)"


def test_affine_annihilator_periodic(p32):
    a = find_affine_annihilator(p32, rectangle(3, 2))
    assert a.c == 17
    assert annihilates(a.psi, p32, 10)
    s = reflected_support(a.psi)
    assert all(is_generated(p32, s, v) for v in s.vertices)


def test_affine_annihilator_sampled(cb):
    a = find_affine_annihilator(cb, rectangle(2, 2), radius=16)
    assert a.stable_radius is not None and a.stable_radius <= 16
    assert annihilates(a.psi, cb, 10)


def test_no_annihilator():
    with pytest.raises(NoAnnihilatorError, match=r"P = 16 > \|S\| = 9"):
        find_affine_annihilator(fib_sum(), rectangle(3, 3), 100)


def test_support_formula():
    rng = random.Random(9)
    for _ in range(30):
        hs = []
        while len(hs) < rng.randint(1, 3):
            h = (rng.randint(-3, 3), rng.randint(-3, 3))
            if h != (0, 0) and all(h[0] * k[1] - h[1] * k[0] != 0 for k in hs):
                hs.append(h)
        phi = difference_product(hs)
        sums = [
            (sum(h[0] for i, h in enumerate(hs) if m >> i & 1), sum(h[1] for i, h in enumerate(hs) if m >> i & 1))
            for m in range(1 << len(hs))
        ]
        assert phi.support <= set(sums)
        if len(set(sums)) == len(sums):
            assert len(phi.support) == 2 ** len(hs)
        # zonotope vertices are attained by a single subset, so they never cancel
        assert sorted(hull(phi.support).vertices) == sorted(hull(sums).vertices)
