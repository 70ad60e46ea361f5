"""Evaluable configurations on Z^2.

Three concrete families: doubly periodic tables, singly periodic layers
driven by a 1D sequence, and integer linear combinations of sources. Every
source can also be evaluated on a whole rectangle at once (``grid``), which
is what the pattern-counting kernels consume.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .geometry import Vec2, add, det, independent, norm_inf, primitive, sub, yx_key
from .sequences import Sequence1D

INT64_SAFE = 2**62


def _ext_gcd(a: int, b: int):
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def lattice_hnf(h1: Vec2, h2: Vec2) -> tuple[int, int, int]:
    """Basis ``(p, 0), (q, r)`` of the lattice spanned by ``h1, h2`` with
    ``p, r > 0`` and ``0 <= q < p``."""
    if not independent(h1, h2):
        raise ValueError(f"periods {h1}, {h2} are linearly dependent")
    g, s, t = _ext_gcd(h1[1], h2[1])
    if g == 0:
        raise ValueError("periods span no vertical direction")
    vx = s * h1[0] + t * h2[0]
    wx = (h2[1] // g) * h1[0] - (h1[1] // g) * h2[0]
    p = abs(wx)
    return p, vx % p, g


class ConfigurationSource:
    """Abstract evaluable configuration ``g -> symbol``."""

    exact = False
    periods: tuple = ()

    def eval(self, g: Vec2) -> int:
        raise NotImplementedError

    def max_abs(self) -> int:
        raise NotImplementedError

    def shift(self, u: Vec2) -> "ConfigurationSource":
        raise NotImplementedError

    def _grid(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def grid(self, x0: int, x1: int, y0: int, y1: int) -> np.ndarray:
        """Values on ``[x0, x1) x [y0, y1)`` as an array indexed ``[y - y0, x - x0]``.

        int64 when the declared value bound is safe, object dtype otherwise.
        """
        shape = (max(y1 - y0, 0), max(x1 - x0, 0))
        xs = np.broadcast_to(np.arange(x0, x1, dtype=np.int64)[None, :], shape)
        ys = np.broadcast_to(np.arange(y0, y1, dtype=np.int64)[:, None], shape)
        if self.max_abs() >= INT64_SAFE:
            out = np.empty(xs.shape, dtype=object)
            for iy in range(xs.shape[0]):
                for ix in range(xs.shape[1]):
                    out[iy, ix] = self.eval((int(xs[iy, ix]), int(ys[iy, ix])))
            return out
        return self._grid(xs, ys)

    def line_reduction(self):
        """``(h, f)`` when the value at ``g`` is ``f(det(h, g))`` for a
        primitive ``h``; ``f(lo, hi)`` returns the transversal values as an
        array. ``None`` for sources without that structure."""
        return None

    def fundamental_domain(self) -> list[Vec2]:
        raise NotImplementedError

    def window(self, domain: Iterable[Vec2]) -> "Pattern":
        return window(self, domain)


class DoublyPeriodic(ConfigurationSource):
    """Configuration invariant under the lattice spanned by ``h1, h2``.

    With ``(p, 0), (q, r)`` the Hermite basis of that lattice, ``table`` has
    ``r`` rows of ``p`` entries and ``table[y][x]`` is the value at the
    representative ``(x, y)``, ``0 <= x < p``, ``0 <= y < r``.
    """

    exact = True

    def __init__(self, h1: Vec2, h2: Vec2, table: Sequence[Sequence[int]], offset: Vec2 = (0, 0)):
        self.h1 = (int(h1[0]), int(h1[1]))
        self.h2 = (int(h2[0]), int(h2[1]))
        self.p, self.q, self.r = lattice_hnf(self.h1, self.h2)
        self.table = tuple(tuple(int(a) for a in row) for row in table)
        if len(self.table) != self.r or any(len(row) != self.p for row in self.table):
            raise ValueError(
                f"table must have {self.r} row(s) of {self.p} value(s) for periods {self.h1}, {self.h2}"
            )
        self.offset = (int(offset[0]), int(offset[1]))
        self.periods = (self.h1, self.h2)

    def reduce(self, g: Vec2) -> Vec2:
        x, y = add(g, self.offset)
        k = y // self.r
        return ((x - k * self.q) % self.p, y - k * self.r)

    def eval(self, g):
        x, y = self.reduce(g)
        return self.table[y][x]

    def _grid(self, xs, ys):
        xs = xs + self.offset[0]
        ys = ys + self.offset[1]
        k = np.floor_divide(ys, self.r)
        yr = ys - k * self.r
        xr = np.mod(xs - k * self.q, self.p)
        return np.array(self.table, dtype=np.int64)[yr, xr]

    def max_abs(self):
        return max(abs(a) for row in self.table for a in row)

    def shift(self, u):
        return DoublyPeriodic(self.h1, self.h2, self.table, add(self.offset, u))

    def fundamental_domain(self):
        return [(x, y) for y in range(self.r) for x in range(self.p)]

    def __repr__(self):
        return f"DoublyPeriodic({self.h1}, {self.h2}, {self.table}, offset={self.offset})"


def constant(value: int = 0) -> DoublyPeriodic:
    return DoublyPeriodic((1, 0), (0, 1), [[value]])


def checkerboard(a: int = 0, b: int = 1) -> DoublyPeriodic:
    return DoublyPeriodic((1, 1), (1, -1), [[a, b]])


class Layer(ConfigurationSource):
    """Singly periodic layer: ``eval(g) = seq(det(h, g) + offset)``."""

    def __init__(self, h: Vec2, seq: Sequence1D, offset: int = 0):
        line, m = primitive(h)
        if m != 1:
            raise ValueError(f"layer period {h} must be primitive")
        self.h = line.dir
        self.seq = seq
        self.offset = int(offset)
        self.periods = (self.h,)

    def eval(self, g):
        return self.seq(det(self.h, g) + self.offset)

    def _grid(self, xs, ys):
        d = self.h[0] * ys - self.h[1] * xs + self.offset
        lo, hi = int(d.min()), int(d.max()) + 1
        vals = self.seq.values(lo, hi)
        return vals[d - lo]

    def max_abs(self):
        return self.seq.max_abs()

    def shift(self, u):
        return Layer(self.h, self.seq, self.offset + det(self.h, u))

    def line_reduction(self):
        off = self.offset
        seq = self.seq
        return self.h, lambda lo, hi: seq.values(lo + off, hi + off)

    def __repr__(self):
        return f"Layer({self.h}, {self.seq!r}, offset={self.offset})"


class Sum(ConfigurationSource):
    """Integer linear combination ``sum c_i * source_i``."""

    def __init__(self, terms: Sequence[tuple[int, ConfigurationSource]], periods: Sequence[Vec2] = ()):
        if not terms:
            raise ValueError("empty sum")
        self.terms = tuple((int(c), s) for c, s in terms)
        self.periods = tuple(periods)

    def eval(self, g):
        return sum(c * s.eval(g) for c, s in self.terms)

    def _grid(self, xs, ys):
        out = np.zeros(xs.shape, dtype=np.int64)
        for c, s in self.terms:
            out += c * s._grid(xs, ys)
        return out

    def max_abs(self):
        return sum(abs(c) * s.max_abs() for c, s in self.terms)

    def shift(self, u):
        return Sum([(c, s.shift(u)) for c, s in self.terms], self.periods)

    def line_reduction(self):
        reds = [s.line_reduction() for _, s in self.terms]
        if any(r is None for r in reds):
            return None
        h = reds[0][0]
        if any(r[0] != h for r in reds):
            return None
        coefs = [c for c, _ in self.terms]
        fns = [r[1] for r in reds]
        return h, lambda lo, hi: sum(c * f(lo, hi) for c, f in zip(coefs, fns))

    def __repr__(self):
        return f"Sum({list(self.terms)})"


class Reduced(ConfigurationSource):
    """Symbol-wise reduction modulo a prime."""

    def __init__(self, inner: ConfigurationSource, p: int):
        self.inner = inner
        self.p = int(p)
        self.exact = inner.exact
        self.periods = inner.periods

    def eval(self, g):
        return self.inner.eval(g) % self.p

    def _grid(self, xs, ys):
        if self.inner.max_abs() >= INT64_SAFE:
            flat = [self.eval((int(x), int(y))) for x, y in zip(np.ravel(xs), np.ravel(ys))]
            return np.array(flat, dtype=np.int64).reshape(np.shape(xs))
        return np.mod(self.inner._grid(xs, ys), self.p)

    def grid(self, x0, x1, y0, y1):
        g = self.inner.grid(x0, x1, y0, y1)
        return np.mod(g, self.p).astype(np.int64)

    def max_abs(self):
        return self.p - 1

    def shift(self, u):
        return Reduced(self.inner.shift(u), self.p)

    def line_reduction(self):
        red = self.inner.line_reduction()
        if red is None:
            return None
        h, f = red
        p = self.p
        return h, lambda lo, hi: np.mod(f(lo, hi), p)

    def fundamental_domain(self):
        return self.inner.fundamental_domain()

    def __repr__(self):
        return f"Reduced({self.inner!r}, {self.p})"


def eval_source(src: ConfigurationSource, g: Vec2) -> int:
    return src.eval(g)


def shift(src: ConfigurationSource, u: Vec2) -> ConfigurationSource:
    """``shift(src, u)`` evaluates to ``src(g + u)``."""
    return src.shift(u)


@dataclass(frozen=True)
class Pattern:
    """Values of a configuration on a finite domain.

    ``points`` is in canonical (row, column) order and ``values`` is aligned
    with it. Equality compares the translated-to-origin shape and values.
    """

    points: tuple
    values: tuple

    @classmethod
    def from_dict(cls, d: dict) -> "Pattern":
        pts = tuple(sorted(d, key=yx_key))
        return cls(pts, tuple(d[g] for g in pts))

    @property
    def domain(self) -> frozenset:
        return frozenset(self.points)

    def as_dict(self) -> dict:
        return dict(zip(self.points, self.values))

    def __getitem__(self, g):
        return self.as_dict()[g]

    def base(self) -> Vec2:
        if not self.points:
            return (0, 0)
        return (min(g[0] for g in self.points), min(g[1] for g in self.points))

    def key(self) -> tuple:
        b = self.base()
        return (tuple(sub(g, b) for g in self.points), self.values)

    def restrict(self, domain: Iterable[Vec2]) -> "Pattern":
        d = self.as_dict()
        return Pattern.from_dict({g: d[g] for g in domain})

    def __eq__(self, other):
        return isinstance(other, Pattern) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def window(src: ConfigurationSource, domain: Iterable[Vec2]) -> Pattern:
    pts = tuple(sorted(set(domain), key=yx_key))
    if not pts:
        return Pattern((), ())
    xs = [g[0] for g in pts]
    ys = [g[1] for g in pts]
    x0, y0 = min(xs), min(ys)
    area = (max(xs) - x0 + 1) * (max(ys) - y0 + 1)
    if area <= 4 * len(pts) + 64:
        arr = src.grid(x0, max(xs) + 1, y0, max(ys) + 1)
        vals = tuple(int(arr[y - y0, x - x0]) for x, y in pts)
    else:
        vals = tuple(src.eval(g) for g in pts)
    return Pattern(pts, vals)


def window_period_check(p: Pattern, h: Vec2) -> bool:
    """Restricted periodicity: ``p(g + h) == p(g)`` wherever both are defined."""
    if h == (0, 0):
        raise ValueError("zero period")
    d = p.as_dict()
    for g, a in d.items():
        b = d.get(add(g, h))
        if b is not None and b != a:
            return False
    return True


def centered_window(radius: int) -> list[Vec2]:
    """The ``(4 * radius)^2`` window ``[-2r, 2r)^2`` used for period scans."""
    lo, hi = -2 * radius, 2 * radius
    return [(x, y) for y in range(lo, hi) for x in range(lo, hi)]


def detect_periods(src: ConfigurationSource, radius: int) -> set[Vec2]:
    """All ``h`` with ``||h||_inf <= radius`` that are periods of the centered
    ``(4 * radius)^2`` window."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    lo, hi = -2 * radius, 2 * radius
    arr = np.asarray(src.grid(lo, hi, lo, hi))
    n = hi - lo
    found = set()
    for hy in range(-radius, radius + 1):
        for hx in range(-radius, radius + 1):
            if hx == 0 and hy == 0:
                continue
            # compare arr[y, x] with arr[y + hy, x + hx] on the overlap
            ya, yb = max(0, -hy), min(n, n - hy)
            xa, xb = max(0, -hx), min(n, n - hx)
            if ya >= yb or xa >= xb:
                found.add((hx, hy))
                continue
            a = arr[ya:yb, xa:xb]
            b = arr[ya + hy:yb + hy, xa + hx:xb + hx]
            if np.array_equal(a, b):
                found.add((hx, hy))
    return found


def declared_periods_within(src: ConfigurationSource, radius: int) -> set[Vec2]:
    """Integer multiples of the declared periods with ``||.||_inf <= radius``."""
    out = set()
    for h in src.periods:
        for t in range(-radius, radius + 1):
            v = (t * h[0], t * h[1])
            if t and norm_inf(v) <= radius:
                out.add(v)
    return out


def verify_periods(src: ConfigurationSource, radius: int = 8) -> bool:
    """Check the declared periods on the centered ``(4 * radius)^2`` window."""
    pat = window(src, centered_window(radius))
    return all(window_period_check(pat, h) for h in src.periods)
