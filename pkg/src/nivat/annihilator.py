"""Laurent polynomials acting on configurations by convolution.

``(phi eta)_g = sum_i a_i * eta_{g - u_i}`` for ``phi = sum_i a_i X^{u_i}``.
Coefficients live in Z or in a prime field F_p.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from . import linalg
from .complexity import census
from .configuration import ConfigurationSource, Reduced
from .errors import NoAnnihilatorError
from .geometry import ConvexLatticeSet, Vec2, add, hull, neg, primitive, sub, yx_key

INT64_SAFE = 2**62


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Ring:
    """``Ring()`` is Z; ``Ring(p)`` is the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "integers" if self.p is None else f"prime field({self.p})"

    def norm(self, a: int) -> int:
        return int(a) if self.p is None else int(a) % self.p

    def __str__(self):
        return "Z" if self.p is None else f"F_{self.p}"


ZZ = Ring()


class LaurentPoly:
    """Immutable sparse Laurent polynomial in two variables."""

    __slots__ = ("ring", "_terms")

    def __init__(self, terms: Mapping[Vec2, int] | Iterable[tuple[Vec2, int]] = (), ring: Ring = ZZ):
        self.ring = ring
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for v, a in items:
            v = (int(v[0]), int(v[1]))
            acc[v] = ring.norm(acc.get(v, 0) + int(a))
        self._terms = {v: a for v, a in acc.items() if a != 0}

    @classmethod
    def monomial(cls, v: Vec2, coef: int = 1, ring: Ring = ZZ) -> "LaurentPoly":
        return cls({v: coef}, ring)

    @classmethod
    def one(cls, ring: Ring = ZZ) -> "LaurentPoly":
        return cls({(0, 0): 1}, ring)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, v: Vec2) -> int:
        return self._terms.get(v, 0)

    def items(self):
        """Terms in descending (x, y) order."""
        return sorted(self._terms.items(), reverse=True)

    def _check(self, other):
        if isinstance(other, int):
            return LaurentPoly({(0, 0): other}, self.ring)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()), self.ring)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({v: -a for v, a in self._terms.items()}, self.ring)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = add(u, v)
                acc[w] = acc.get(w, 0) + a * b
        return LaurentPoly(acc, self.ring)

    __rmul__ = __mul__

    def shift(self, v: Vec2) -> "LaurentPoly":
        """``X^v * self``."""
        return LaurentPoly({add(u, v): a for u, a in self._terms.items()}, self.ring)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({(0, 0): other}, self.ring)
        return (
            isinstance(other, LaurentPoly)
            and self.ring == other.ring
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        suffix = "" if self.ring.p is None else f", mod {self.ring.p}"
        return f"LaurentPoly({format_poly(self)!r}{suffix})"


def format_poly(phi: LaurentPoly) -> str:
    """``1*(1,1) - 1*(1,0) - 1*(0,1) + 1*(0,0)``; terms in descending (x, y)."""
    items = phi.items()
    if not items:
        return "0"
    parts = []
    for i, ((x, y), a) in enumerate(items):
        term = f"{abs(a)}*({x},{y})"
        if i == 0:
            parts.append(term if a > 0 else "-" + term)
        else:
            parts.append(("+ " if a > 0 else "- ") + term)
    return " ".join(parts)


_TERM = re.compile(r"\s*([+-]?)\s*(\d+)\s*\*\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*")


def parse_poly(text: str, ring: Ring = ZZ) -> LaurentPoly:
    """Inverse of :func:`format_poly`."""
    s = text.strip()
    if s == "0":
        return LaurentPoly((), ring)
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or (terms and not m.group(1)):
            raise ValueError(f"cannot parse polynomial at column {pos + 1}: {s[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        terms.append(((int(m.group(3)), int(m.group(4))), sign * int(m.group(2))))
        pos = m.end()
    if not terms:
        raise ValueError("empty polynomial")
    return LaurentPoly(terms, ring)


def difference_product(hs: Iterable[Vec2], ring: Ring = ZZ) -> LaurentPoly:
    """``prod_i (X^{h_i} - 1)``."""
    out = LaurentPoly.one(ring)
    for h in hs:
        h = (int(h[0]), int(h[1]))
        if h == (0, 0):
            raise ValueError("difference product needs nonzero vectors")
        out = out * LaurentPoly({h: 1, (0, 0): -1}, ring)
    return out


def reflected_support(phi: LaurentPoly) -> ConvexLatticeSet:
    """``conv(-supp(phi)) ∩ Z^2``."""
    if phi.is_zero():
        raise ValueError("reflected support of the zero polynomial")
    return hull(neg(u) for u in phi.support)


def reduce_mod(obj, p: int):
    """Reduce a polynomial's coefficients or a source's symbols modulo ``p``."""
    ring = Ring(p)
    if isinstance(obj, LaurentPoly):
        if obj.ring.p is not None and obj.ring.p != p:
            raise ValueError("cannot reduce between different prime fields")
        return LaurentPoly(obj._terms, ring)
    if isinstance(obj, ConfigurationSource):
        return Reduced(obj, p)
    raise TypeError(f"cannot reduce {type(obj).__name__}")


def _source_for(phi: LaurentPoly, src: ConfigurationSource) -> ConfigurationSource:
    p = phi.ring.p
    if p is None or (isinstance(src, Reduced) and src.p == p):
        return src
    return Reduced(src, p)


def apply(phi: LaurentPoly, src: ConfigurationSource, g: Vec2) -> int:
    """``(phi eta)_g``; symbols are reduced mod p first over F_p."""
    src = _source_for(phi, src)
    total = sum(a * src.eval(sub(g, u)) for u, a in phi._terms.items())
    return phi.ring.norm(total)


def apply_box(phi: LaurentPoly, src: ConfigurationSource, x0: int, x1: int, y0: int, y1: int) -> np.ndarray:
    """``(phi eta)`` on ``[x0, x1) x [y0, y1)``, indexed ``[y - y0, x - x0]``."""
    src = _source_for(phi, src)
    shape = (y1 - y0, x1 - x0)
    if phi.is_zero():
        return np.zeros(shape, dtype=np.int64)
    us = list(phi._terms)
    gx0 = x0 - max(u[0] for u in us)
    gx1 = x1 - min(u[0] for u in us)
    gy0 = y0 - max(u[1] for u in us)
    gy1 = y1 - min(u[1] for u in us)
    grid = src.grid(gx0, gx1, gy0, gy1)
    bound = sum(abs(a) for a in phi._terms.values()) * max(src.max_abs(), 1)
    if grid.dtype == object or bound >= INT64_SAFE:
        grid = grid.astype(object)
        out = np.zeros(shape, dtype=object)
    else:
        out = np.zeros(shape, dtype=np.int64)
    for (ux, uy), a in phi._terms.items():
        ox, oy = x0 - ux - gx0, y0 - uy - gy0
        out += a * grid[oy:oy + shape[0], ox:ox + shape[1]]
    if phi.ring.p is not None:
        out = np.mod(out, phi.ring.p)
    return out


@dataclass(frozen=True)
class AnnihilationVerdict:
    holds: bool
    tested_region: str
    counterexample: tuple | None = None  # (g, value)

    def __bool__(self):
        return self.holds


def annihilates(phi: LaurentPoly, src: ConfigurationSource, region=10) -> AnnihilationVerdict:
    """Check ``phi eta = 0`` on ``region``.

    ``region`` is a radius ``R`` (the square ``[-R, R]^2``) or a finite
    iterable of points. The first failure in (row, column) order is returned.
    """
    if isinstance(region, int):
        r = region
        vals = apply_box(phi, src, -r, r + 1, -r, r + 1)
        desc = f"[-{r},{r}]^2"
        bad = np.argwhere(vals != 0)
        if len(bad):
            iy, ix = bad[0]
            g = (int(ix) - r, int(iy) - r)
            return AnnihilationVerdict(False, desc, (g, int(vals[iy, ix])))
        return AnnihilationVerdict(True, desc)
    pts = sorted(set(region), key=yx_key)
    desc = f"{len(pts)} points"
    for g in pts:
        v = apply(phi, src, g)
        if v != 0:
            return AnnihilationVerdict(False, desc, (g, v))
    return AnnihilationVerdict(True, desc)


@dataclass(frozen=True)
class AffineAnnihilator:
    """``sigma eta = c`` on the tested region and ``psi = (X^u - 1) sigma``
    annihilates there."""

    sigma: LaurentPoly
    c: int
    psi: LaurentPoly
    u: Vec2
    vector: tuple  # (a_0, a_1, ..., a_s)
    points: tuple  # u_1, ..., u_s
    radius: int | None
    stable_radius: int | None
    rank: int
    pattern_count: int
    verified: AnnihilationVerdict = field(repr=False, default=None)


def _psi_direction(s_sigma: ConvexLatticeSet) -> Vec2:
    if len(s_sigma) == 1:
        return (1, 0)
    if s_sigma.degenerate:
        return primitive(sub(s_sigma.vertices[1], s_sigma.vertices[0]))[0].dir
    edge = min(s_sigma.edges(), key=lambda e: (e.start, e.end))
    return edge.direction.dir


def _matrix(patterns) -> list[list[int]]:
    return [[1, *row] for row in sorted(patterns)]


def _sample_radii(radius: int) -> list[int]:
    out = []
    r = 1
    while r < radius:
        out.append(r)
        r *= 2
    out.append(radius)
    return out


def integer_relation(src: ConfigurationSource, points, radius: int | None = None):
    """First nullspace vector ``(a_0, ..., a_s)`` of the sampled pattern matrix
    with some ``a_i != 0`` for ``i >= 1``, signed so the first such entry is
    positive; ``None`` if only the trivial relation exists.

    Returns ``(vector, census, rank)``.
    """
    pts = tuple(sorted(set(points), key=yx_key))
    cen = census(src, pts, radius)
    mat = _matrix(cen.patterns)
    rank = linalg.rank(mat)
    for v in linalg.integer_nullspace(mat, len(pts) + 1):
        if any(v[1:]):
            if next(a for a in v[1:] if a) < 0:
                v = [-a for a in v]
            return tuple(v), cen, rank
    return None, cen, rank


def relation_polys(pts, vec):
    """``(sigma, c)`` for a relation vector over ``pts``."""
    sigma = LaurentPoly({neg(u): a for u, a in zip(pts, vec[1:])})
    return sigma, -vec[0]


def psi_from(sigma: LaurentPoly):
    u = _psi_direction(reflected_support(sigma))
    return u, LaurentPoly({u: 1, (0, 0): -1}) * sigma


def find_affine_annihilator(src: ConfigurationSource, s, radius: int | None = None,
                            check_radius: int = 10) -> AffineAnnihilator:
    """Integer relation ``a_0 + sum_i a_i eta_{u_i + g} = 0`` over all sampled
    translates ``g``, turned into ``sigma = sum_i a_i X^{-u_i}`` with
    ``sigma eta = -a_0`` and ``psi = (X^u - 1) sigma``.

    Requires ``P(S) <= |S|`` on the sample; ``radius=None`` enumerates exactly
    (doubly periodic sources), in which case the result is verified on
    ``[-check_radius, check_radius]^2``; sampled results are verified on the
    sampling square.
    """
    pts = tuple(sorted(set(s.points if isinstance(s, ConvexLatticeSet) else s), key=yx_key))
    vec, cen, rank = integer_relation(src, pts, radius)
    if cen.count > len(pts):
        raise NoAnnihilatorError(f"P = {cen.count} > |S| = {len(pts)}")
    if vec is None:
        raise NoAnnihilatorError("trivial nullspace")
    stable = None
    if radius is not None:
        for r in _sample_radii(radius):
            if r == radius or linalg.rank(_matrix(census(src, pts, r).patterns)) == rank:
                stable = r
                break
    sigma, c = relation_polys(pts, vec)
    u, psi = psi_from(sigma)
    if radius is None:
        check = check_radius
    else:
        check = radius
    const = apply_box(sigma, src, -check, check + 1, -check, check + 1)
    if np.any(const != c):
        raise ArithmeticError("affine relation failed verification")
    # psi at g needs sigma at g and g - u, both inside the checked square
    verdict = annihilates(psi, src, check if radius is None else max(check - 1, 0))
    if not verdict.holds:
        raise ArithmeticError("annihilator failed verification")
    return AffineAnnihilator(
        sigma=sigma, c=c, psi=psi, u=u, vector=tuple(vec), points=pts,
        radius=radius, stable_radius=stable, rank=rank, pattern_count=cen.count,
        verified=verdict,
    )
