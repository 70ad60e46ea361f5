import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nivat.errors import DegenerateError, ZeroDirectionError
from nivat.geometry import (
    AnchoredLine,
    OrientedLine,
    convex_subsets,
    det,
    half_plane_contains,
    hull,
    is_enveloped,
    is_lattice_convex,
    is_weakly_enveloped,
    next_line,
    primitive,
    rectangle,
    sub,
    support_line,
)

UNIT = hull([(0, 0), (1, 0), (0, 1), (1, 1)])
points = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=8)


def test_primitive():
    assert primitive((4, 6)) == (OrientedLine((2, 3)), 2)
    assert primitive((1, 0)) == (OrientedLine((1, 0)), 1)
    assert primitive((0, -5)) == (OrientedLine((0, -1)), 5)
    with pytest.raises(ZeroDirectionError, match="zero direction"):
        primitive((0, 0))


def test_oriented_lines_distinct():
    assert OrientedLine((1, 0)) != OrientedLine((-1, 0))
    assert OrientedLine((2, 3)).v == (2, 3)
    with pytest.raises(ValueError):
        OrientedLine((2, 4))


def test_hull_examples():
    assert len(UNIT) == 4 and len(UNIT.vertices) == 4
    tri = hull([(0, 0), (2, 0), (0, 2)])
    assert tri.points == {(0, 0), (1, 0), (2, 0), (0, 1), (1, 1), (0, 2)}
    seg = hull([(0, 0), (3, 0)])
    assert len(seg) == 4 and seg.degenerate


def test_half_plane():
    east, north = OrientedLine((1, 0)), OrientedLine((0, 1))
    assert half_plane_contains(east, (0, 0), (5, 0))
    assert not half_plane_contains(east, (0, 0), (0, -1))
    assert half_plane_contains(north, (0, 0), (-2, 7))


def test_support_line():
    assert support_line(OrientedLine((1, 0)), UNIT)[1] == {(0, 0), (1, 0)}
    assert support_line(OrientedLine((-1, 0)), UNIT)[1] == {(1, 1), (0, 1)}
    assert support_line(OrientedLine((1, 1)), UNIT)[1] == {(1, 0)}


def test_next_line():
    east = AnchoredLine.through(OrientedLine((1, 0)), (0, 0))
    assert next_line(east).contains((7, -1))
    north = AnchoredLine.through(OrientedLine((0, 1)), (0, 0))
    assert next_line(north).contains((1, 5))
    steep = next_line(AnchoredLine.through(OrientedLine((1, 2)), (0, 0)))
    assert steep.level == -1 and OrientedLine((1, 2)).normal == (-2, 1)
    assert next_line(next_line(east)).level == east.level - 2


def test_envelopes():
    sq3, sq2 = rectangle(3, 3), rectangle(2, 2)
    assert is_weakly_enveloped(sq3, sq2) and is_enveloped(sq3, sq2)
    assert not is_weakly_enveloped(sq2, sq3)
    assert not is_weakly_enveloped(hull([(0, 0), (2, 0), (0, 2)]), UNIT)
    with pytest.raises(DegenerateError, match="degenerate"):
        is_weakly_enveloped(hull([(0, 0), (3, 0)]), UNIT)


def test_degenerate_edges_error():
    with pytest.raises(DegenerateError):
        hull([(0, 0), (2, 2)]).edges()


def test_convex_subsets_small():
    subs = convex_subsets(UNIT)
    # 4 singletons, 4 sides, 2 diagonals, 4 triangles, the square
    assert len(subs) == 15
    assert all(is_lattice_convex(s.points) for s in subs)


@settings(max_examples=60, deadline=None)
@given(points)
def test_hull_properties(pts):
    h = hull(pts)
    assert hull(h.points) == h
    assert set(pts) <= h.points
    for v in h.vertices:
        rest = h.points - {v}
        assert not rest or is_lattice_convex(rest)
    for g in h.points - set(h.vertices):
        rest = h.points - {g}
        assert hull(rest).points != rest
    vs = h.vertices
    if not h.degenerate:
        crosses = [det(sub(vs[(i + 1) % len(vs)], vs[i]), sub(vs[(i + 2) % len(vs)], vs[(i + 1) % len(vs)]))
                   for i in range(len(vs))]
        assert all(c >= 0 for c in crosses) and sum(c > 0 for c in crosses) >= 3


@settings(max_examples=60, deadline=None)
@given(points, st.sampled_from([(1, 0), (0, 1), (1, 1), (-1, 2), (2, -1), (-1, -1)]))
def test_support_line_properties(pts, d):
    s = hull(pts)
    al, contact = support_line(OrientedLine(d), s)
    assert contact and all(al.contains(g) for g in contact)
    assert all(al.in_half_plane(g) for g in s.points)
