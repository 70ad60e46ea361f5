import pytest

from conftest import fib_layer
from conftest import fib_parts as _fib_sources
from nivat.configuration import Sum, checkerboard
from nivat.decomposition import (
    Decomposition,
    Rect,
    coset_classes,
    decompose_window,
    gauge_distance,
    minimality_bound,
    truth_solve,
    verify_decomposition,
)
from nivat.errors import InfeasibleWindowError


def fib_parts():
    a, b = _fib_sources()
    return [(Sum([(1, a)], periods=[(0, 1)]), (0, 1)), (Sum([(2, b)], periods=[(1, 0)]), (1, 0))]


def test_verify_fib_sum(fs):
    parts = fib_parts()
    rep = verify_decomposition(fs, Decomposition(parts, claimed_minimal=True))
    assert rep.ok and rep.region == "[-20,20]^2"


def test_verify_reports_failures(fs):
    a, b = fib_parts()
    bad = Decomposition([(a[0], (1, 0)), b], claimed_minimal=True)
    rep = verify_decomposition(fs, bad)
    assert rep.check("sum").passed and not rep.check("periods").passed
    dep = Decomposition([a, (b[0], (0, 2))], claimed_minimal=True)
    rep = verify_decomposition(fs, dep)
    assert not rep.check("independence").passed
    assert not verify_decomposition(checkerboard(), Decomposition([a])).check("sum").passed


def test_minimality_bound():
    assert minimality_bound(3, 2) == 2
    with pytest.raises(ValueError):
        minimality_bound(0, 2)


def test_coset_classes():
    cl = coset_classes(Rect.square(4), (1, 1))
    assert cl[(3, 3)] == (0, 0) and cl[(3, 0)] == (3, 0) and cl[(0, 2)] == (0, 2)
    assert len(set(cl.values())) == 7


@pytest.mark.parametrize("n", [8, 12])
def test_recovers_ground_truth(fs, n):
    parts = fib_parts()
    w = Rect.square(n)
    sol = decompose_window(fs, [h for _, h in parts], w)
    assert sol.integral and sol.check(fs)
    g = gauge_distance(truth_solve(parts, w), sol)
    assert g.equivalent and g.constants[0] == -g.constants[1]


def test_nested_windows(fs):
    periods = [(0, 1), (1, 0)]
    big = decompose_window(fs, periods, Rect.square(12))
    small = decompose_window(fs, periods, Rect.square(8))
    assert big.restrict(Rect.square(8)).tables == small.regauged().tables


def test_infeasible_window():
    with pytest.raises(InfeasibleWindowError) as info:
        decompose_window(fib_layer(), [(1, 0), (1, 1)], Rect.square(6))
    src = fib_layer()
    witness = info.value.witness
    assert sum(m * src.eval(g) for g, m in witness) != 0


def test_checkerboard_window():
    sol = decompose_window(checkerboard(0, 2), [(1, 1), (1, -1)], Rect.square(4))
    assert sol.check(checkerboard(0, 2))
    assert sol.gauge == "components 2..m vanish on the class of (0,0)"


def test_rect_parse():
    r = Rect.parse("1,2,3,4")
    assert (r.x0, r.y0, r.width, r.height) == (1, 2, 3, 4)
    assert str(r) == "3x4 at (1,2)"
    with pytest.raises(ValueError):
        Rect.parse("1,2,3")
