"""Exact integer geometry of Z^2.

Vectors are plain ``(x, y)`` tuples of Python ints, so arithmetic never
overflows. Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Tuple

from .errors import DegenerateError, ZeroDirectionError

Vec2 = Tuple[int, int]


def add(u: Vec2, v: Vec2) -> Vec2:
    return (u[0] + v[0], u[1] + v[1])


def sub(u: Vec2, v: Vec2) -> Vec2:
    return (u[0] - v[0], u[1] - v[1])


def neg(u: Vec2) -> Vec2:
    return (-u[0], -u[1])


def scale(k: int, u: Vec2) -> Vec2:
    return (k * u[0], k * u[1])


def dot(u: Vec2, v: Vec2) -> int:
    return u[0] * v[0] + u[1] * v[1]


def det(u: Vec2, v: Vec2) -> int:
    """Cross product ``u.x*v.y - u.y*v.x``."""
    return u[0] * v[1] - u[1] * v[0]


def norm_inf(u: Vec2) -> int:
    return max(abs(u[0]), abs(u[1]))


def yx_key(g: Vec2):
    """Canonical scan order: by row, then column."""
    return (g[1], g[0])


def independent(u: Vec2, v: Vec2) -> bool:
    return det(u, v) != 0


@dataclass(frozen=True, order=True)
class OrientedLine:
    """A rational oriented line through the origin, stored by its primitive
    direction. ``OrientedLine((1, 0))`` and ``OrientedLine((-1, 0))`` are
    different objects."""

    dir: Vec2

    def __post_init__(self):
        x, y = self.dir
        if x == 0 and y == 0:
            raise ZeroDirectionError()
        if gcd(x, y) != 1:
            raise ValueError(f"direction {self.dir} is not primitive")
        object.__setattr__(self, "dir", (int(x), int(y)))

    @property
    def normal(self) -> Vec2:
        """Left normal; the half plane H(l) is where ``<g, normal> >= 0``."""
        return (-self.dir[1], self.dir[0])

    @property
    def v(self) -> Vec2:
        """Minimal-norm lattice vector parallel to the line (equals ``dir``)."""
        return self.dir

    def reversed(self) -> "OrientedLine":
        return OrientedLine(neg(self.dir))

    def unoriented(self) -> Vec2:
        """Canonical representative of the unoriented line."""
        x, y = self.dir
        if y < 0 or (y == 0 and x < 0):
            return (-x, -y)
        return (x, y)

    def parallel_to(self, h: Vec2) -> bool:
        """True when ``h`` lies on this line (either orientation)."""
        return h != (0, 0) and det(self.dir, h) == 0

    def __str__(self):
        return f"({self.dir[0]},{self.dir[1]})"


def primitive(v: Vec2) -> tuple[OrientedLine, int]:
    """Split ``v`` as ``multiplier * dir`` with ``dir`` primitive."""
    x, y = v
    if x == 0 and y == 0:
        raise ZeroDirectionError()
    m = gcd(x, y)
    return OrientedLine((x // m, y // m)), m


def angle_cmp(u: Vec2, v: Vec2) -> int:
    """Exact comparison of polar angles in [0, 2*pi)."""

    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = det(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


angle_key = cmp_to_key(angle_cmp)


def direction_sort_key(line: OrientedLine):
    return (angle_key(line.dir), line.dir)


@dataclass(frozen=True)
class AnchoredLine:
    """The lattice line ``{g : <g, line.normal> = level}`` with the
    orientation of ``line``. Every parallel lattice line has an integer level
    because the normal is primitive."""

    line: OrientedLine
    level: int

    @classmethod
    def through(cls, line: OrientedLine, p: Vec2) -> "AnchoredLine":
        return cls(line, dot(p, line.normal))

    def contains(self, g: Vec2) -> bool:
        return dot(g, self.line.normal) == self.level

    def in_half_plane(self, g: Vec2) -> bool:
        return dot(g, self.line.normal) >= self.level

    def offset(self, g: Vec2) -> int:
        """Signed number of lattice-line steps from this line to ``g``."""
        return dot(g, self.line.normal) - self.level


def half_plane_contains(line: OrientedLine, anchor: Vec2, g: Vec2) -> bool:
    return dot(sub(g, anchor), line.normal) >= 0


def next_line(al: AnchoredLine) -> AnchoredLine:
    """The nearest parallel lattice line strictly outside H(al)."""
    return AnchoredLine(al.line, al.level - 1)


@dataclass(frozen=True)
class OrientedEdge:
    start: Vec2
    end: Vec2

    @property
    def vector(self) -> Vec2:
        return sub(self.end, self.start)

    @property
    def direction(self) -> OrientedLine:
        return primitive(self.vector)[0]

    def lattice_count(self) -> int:
        """Number of lattice points on the closed edge."""
        return primitive(self.vector)[1] + 1

    def lattice_points(self) -> list[Vec2]:
        line, m = primitive(self.vector)
        return [add(self.start, scale(t, line.dir)) for t in range(m + 1)]


def _strict_hull(pts: list[Vec2]) -> list[Vec2]:
    """Andrew's monotone chain; drops collinear boundary points; CCW."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and det(sub(out[-1], out[-2]), sub(p, out[-2])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class ConvexLatticeSet:
    """A finite set ``S = conv(S) ∩ Z^2`` together with its hull vertices in
    counterclockwise order (starting from the lexicographically least one).

    Build instances with :func:`hull`.
    """

    points: frozenset
    vertices: tuple

    def __len__(self):
        return len(self.points)

    def __contains__(self, g):
        return g in self.points

    def __iter__(self):
        return iter(self.sorted_points())

    def sorted_points(self) -> list[Vec2]:
        return sorted(self.points, key=yx_key)

    def area2(self) -> int:
        """Twice the area of the convex hull."""
        vs = self.vertices
        if len(vs) < 3:
            return 0
        return sum(det(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    @property
    def degenerate(self) -> bool:
        return self.area2() == 0

    def edges(self) -> list[OrientedEdge]:
        if self.degenerate:
            raise DegenerateError()
        vs = self.vertices
        return [OrientedEdge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_directions(self) -> list[OrientedLine]:
        """Oriented directions of the edges, or both orientations of the
        segment line for a degenerate set with more than one point."""
        if self.degenerate:
            if len(self.vertices) < 2:
                return []
            d = primitive(sub(self.vertices[1], self.vertices[0]))[0]
            return [d, d.reversed()]
        return [e.direction for e in self.edges()]

    def translate(self, u: Vec2) -> "ConvexLatticeSet":
        return ConvexLatticeSet(
            frozenset(add(g, u) for g in self.points),
            tuple(add(g, u) for g in self.vertices),
        )

    def canonical(self) -> tuple:
        """Serialization used for deterministic tie-breaking."""
        return tuple(yx_key(g) for g in self.sorted_points())

    def __repr__(self):
        return f"ConvexLatticeSet(vertices={list(self.vertices)}, n={len(self.points)})"


def hull(points: Iterable[Vec2]) -> ConvexLatticeSet:
    """Lattice fill ``conv(points) ∩ Z^2`` of a non-empty finite point set."""
    pts = [(int(p[0]), int(p[1])) for p in points]
    if not pts:
        raise ValueError("hull of an empty point set")
    vs = _strict_hull(pts)
    if len(vs) == 1:
        return ConvexLatticeSet(frozenset(vs), tuple(vs))
    if len(vs) == 2:
        edge = OrientedEdge(vs[0], vs[1])
        return ConvexLatticeSet(frozenset(edge.lattice_points()), tuple(vs))
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    n = len(vs)
    edge_vecs = [(vs[i], sub(vs[(i + 1) % n], vs[i])) for i in range(n)]
    filled = set()
    for y in range(min(ys), max(ys) + 1):
        for x in range(min(xs), max(xs) + 1):
            g = (x, y)
            if all(det(e, sub(g, a)) >= 0 for a, e in edge_vecs):
                filled.add(g)
    return ConvexLatticeSet(frozenset(filled), tuple(vs))


def is_lattice_convex(points: Iterable[Vec2]) -> bool:
    pts = frozenset(points)
    if not pts:
        return True
    return hull(pts).points == pts


def rectangle(n: int, k: int, origin: Vec2 = (0, 0)) -> ConvexLatticeSet:
    """``R_{n,k}`` = {0..n-1} x {0..k-1}, translated by ``origin``."""
    if n < 1 or k < 1:
        raise ValueError("rectangle sides must be positive")
    x0, y0 = origin
    return hull([(x0, y0), (x0 + n - 1, y0), (x0, y0 + k - 1), (x0 + n - 1, y0 + k - 1)])


def box_points(r: int) -> list[Vec2]:
    """Points of the centered square ``||g||_inf <= r`` in scan order."""
    return [(x, y) for y in range(-r, r + 1) for x in range(-r, r + 1)]


def support_line(line: OrientedLine, s: ConvexLatticeSet | Iterable[Vec2]):
    """``(l_S, contact)``: the translate of ``line`` touching S with S on its
    left, and the contact ``S ∩ l_S``."""
    pts = s.points if isinstance(s, ConvexLatticeSet) else frozenset(s)
    if not pts:
        raise ValueError("support line of an empty set")
    n = line.normal
    level = min(dot(g, n) for g in pts)
    contact = frozenset(g for g in pts if dot(g, n) == level)
    return AnchoredLine(line, level), contact


def is_weakly_enveloped(t: ConvexLatticeSet, u: ConvexLatticeSet) -> bool:
    """Every edge of T has a parallel edge of U carrying no more lattice
    points."""
    if t.degenerate:
        raise DegenerateError("T")
    if u.degenerate:
        raise DegenerateError("U")
    u_edges = u.edges()
    for e in t.edges():
        d = e.direction
        if not any(w.direction == d and w.lattice_count() <= e.lattice_count() for w in u_edges):
            return False
    return True


def is_enveloped(t: ConvexLatticeSet, u: ConvexLatticeSet) -> bool:
    return is_weakly_enveloped(t, u) and len(t.edges()) == len(u.edges())


def convex_subsets(u: ConvexLatticeSet, limit: int | None = None) -> list[ConvexLatticeSet]:
    """All non-empty lattice-convex subsets of ``u``.

    Every convex proper subset of a convex set misses one of its vertices, so
    the family is the closure of ``{u}`` under vertex deletion.
    """
    seen = {u.points: u}
    stack = [u]
    while stack:
        s = stack.pop()
        if len(s.points) == 1:
            continue
        for v in s.vertices:
            rest = s.points - {v}
            if rest in seen:
                continue
            child = hull(rest)
            seen[rest] = child
            stack.append(child)
            if limit is not None and len(seen) > limit:
                raise ValueError(f"more than {limit} convex subsets")
    return sorted(seen.values(), key=lambda s: (len(s), s.canonical()))
