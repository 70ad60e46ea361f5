"""Periodic decompositions ``eta = eta_1 + ... + eta_m``: verification on a
region and exact solving on a rectangular window."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .configuration import ConfigurationSource
from .errors import InfeasibleWindowError
from .geometry import Vec2, add, independent, yx_key


@dataclass(frozen=True)
class Decomposition:
    components: tuple  # ((source, h), ...)
    claimed_minimal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "components", tuple((s, tuple(h)) for s, h in self.components))
        for _, h in self.components:
            if h == (0, 0):
                raise ValueError("component period must be nonzero")

    @property
    def periods(self) -> list[Vec2]:
        return [h for _, h in self.components]

    def __len__(self):
        return len(self.components)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: object = None


@dataclass(frozen=True)
class DecompositionReport:
    checks: tuple
    region: str

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name) -> CheckResult:
        return next(c for c in self.checks if c.name == name)


def _first_true(mask: np.ndarray, x0: int, y0: int):
    bad = np.argwhere(mask)
    if not len(bad):
        return None
    iy, ix = bad[0]
    return (int(ix) + x0, int(iy) + y0)


def verify_decomposition(eta: ConfigurationSource, d: Decomposition, radius: int = 20) -> DecompositionReport:
    """Checks on ``[-R, R]^2``: (a) the components sum to ``eta``, (b) each
    ``h_i`` is a period of its component, (c) pairwise independent periods
    when minimality is claimed."""
    r = radius
    lo, hi = -r, r + 1
    target = np.asarray(eta.grid(lo, hi, lo, hi))
    total = np.zeros_like(target)
    for src, _ in d.components:
        total = total + np.asarray(src.grid(lo, hi, lo, hi))
    g = _first_true(total != target, lo, lo)
    checks = [CheckResult(
        "sum", g is None,
        "components sum to the source" if g is None else f"sum differs at {g}",
        None if g is None else (g, int(total[g[1] - lo, g[0] - lo]), int(target[g[1] - lo, g[0] - lo])),
    )]
    bad_periods = []
    for i, (src, h) in enumerate(d.components):
        arr = np.asarray(src.grid(lo, hi, lo, hi))
        n = hi - lo
        ya, yb = max(0, -h[1]), min(n, n - h[1])
        xa, xb = max(0, -h[0]), min(n, n - h[0])
        if ya >= yb or xa >= xb:
            continue
        a = arr[ya:yb, xa:xb]
        b = arr[ya + h[1]:yb + h[1], xa + h[0]:xb + h[0]]
        p = _first_true(a != b, lo + xa, lo + ya)
        if p is not None:
            bad_periods.append((i, h, p))
    checks.append(CheckResult(
        "periods", not bad_periods,
        "every declared period holds" if not bad_periods else
        "; ".join(f"component {i + 1}: {h} fails at {p}" for i, h, p in bad_periods),
        bad_periods[0] if bad_periods else None,
    ))
    if d.claimed_minimal:
        ps = d.periods
        dep = [(i, j) for i in range(len(ps)) for j in range(i + 1, len(ps)) if not independent(ps[i], ps[j])]
        checks.append(CheckResult(
            "independence", not dep,
            "periods pairwise independent" if not dep else
            "; ".join(f"{ps[i]} and {ps[j]} are dependent" for i, j in dep),
            dep[0] if dep else None,
        ))
    else:
        checks.append(CheckResult("independence", True, "not claimed minimal (skipped)"))
    return DecompositionReport(tuple(checks), f"[-{r},{r}]^2")


def minimality_bound(n: int, k: int) -> int:
    """Upper bound ``min(n, k)`` on the length of a minimal decomposition of a
    source with ``P(n, k) <= nk``."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    return min(n, k)


@dataclass(frozen=True)
class Rect:
    x0: int
    y0: int
    width: int
    height: int

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("window must be non-empty")

    @classmethod
    def square(cls, n: int, origin: Vec2 = (0, 0)) -> "Rect":
        return cls(origin[0], origin[1], n, n)

    @classmethod
    def parse(cls, text: str) -> "Rect":
        parts = [int(t) for t in text.replace(" ", "").split(",")]
        if len(parts) != 4:
            raise ValueError("window must be x0,y0,width,height")
        return cls(*parts)

    def points(self) -> list[Vec2]:
        return [(x, y) for y in range(self.y0, self.y0 + self.height)
                for x in range(self.x0, self.x0 + self.width)]

    def __contains__(self, g):
        return (self.x0 <= g[0] < self.x0 + self.width
                and self.y0 <= g[1] < self.y0 + self.height)

    def __str__(self):
        return f"{self.width}x{self.height} at ({self.x0},{self.y0})"


def coset_classes(window: Rect, h: Vec2) -> dict:
    """Map each window point to the yx-least point of its class; classes are
    generated by ``g ~ g + h`` with both points inside the window."""
    parent = {g: g for g in window.points()}

    def find(g):
        while parent[g] != g:
            parent[g] = parent[parent[g]]
            g = parent[g]
        return g

    for g in window.points():
        nxt = add(g, h)
        if nxt in window:
            a, b = find(g), find(nxt)
            if a != b:
                lo, hi = sorted((a, b), key=yx_key)
                parent[hi] = lo
    return {g: find(g) for g in parent}


@dataclass(frozen=True)
class WindowSolve:
    window: Rect
    periods: tuple
    tables: tuple  # one {point: value} dict per component
    integral: bool
    gauge: str = field(default="")

    def component(self, i: int) -> dict:
        return self.tables[i]

    def total(self) -> dict:
        return {g: sum(t[g] for t in self.tables) for g in self.window.points()}

    def grid(self, i: int) -> list[list]:
        w = self.window
        return [[self.tables[i][(x, y)] for x in range(w.x0, w.x0 + w.width)]
                for y in range(w.y0, w.y0 + w.height)]

    def regauged(self) -> "WindowSolve":
        """Shift components 2..m to vanish at the yx-least window point,
        compensating in component 1."""
        base = self.window.points()[0]
        shifts = [0] + [t[base] for t in self.tables[1:]]
        shifts[0] = -sum(shifts[1:])
        tables = tuple({g: v - s for g, v in t.items()} for t, s in zip(self.tables, shifts))
        return WindowSolve(self.window, self.periods, tables, self.integral, self.gauge)

    def restrict(self, window: Rect) -> "WindowSolve":
        """Restriction to a sub-window, re-gauged."""
        pts = window.points()
        if any(g not in self.window for g in pts):
            raise ValueError("sub-window is not contained in the solved window")
        tables = tuple({g: t[g] for g in pts} for t in self.tables)
        return WindowSolve(window, self.periods, tables, self.integral, self.gauge).regauged()

    def check(self, eta: ConfigurationSource) -> bool:
        """Re-verify the sum and periodicity constraints."""
        total = self.total()
        if any(total[g] != eta.eval(g) for g in total):
            return False
        for t, h in zip(self.tables, self.periods):
            for g, v in t.items():
                nxt = add(g, h)
                if nxt in t and t[nxt] != v:
                    return False
        return True


def _as_number(v: Fraction):
    return v.numerator if v.denominator == 1 else v


def decompose_window(eta: ConfigurationSource, periods: Sequence[Vec2], window: Rect) -> WindowSolve:
    """Solve ``eta = sum eta_i`` on ``window`` with ``eta_i`` ``h_i``-periodic.

    Unknowns are the values of each component on its coset classes inside
    the window. Components 2..m are anchored to 0 on the class of the
    yx-least window point; any remaining freedom is set to 0.
    """
    periods = [tuple(h) for h in periods]
    for h in periods:
        if h == (0, 0):
            raise ValueError("zero period")
    for i in range(len(periods)):
        for j in range(i + 1, len(periods)):
            if not independent(periods[i], periods[j]):
                raise ValueError(f"periods {periods[i]} and {periods[j]} are dependent")
    pts = window.points()
    base = pts[0]
    classes = [coset_classes(window, h) for h in periods]
    columns = {}
    for i, cl in enumerate(classes):
        for rep in sorted(set(cl.values()), key=yx_key):
            if i > 0 and rep == cl[base]:
                continue  # gauge: anchored to 0
            columns[(i, rep)] = len(columns)
    values = {g: eta.eval(g) for g in pts}
    rows = []
    for g in pts:
        row = [0] * len(columns)
        for i, cl in enumerate(classes):
            col = columns.get((i, cl[g]))
            if col is not None:
                row[col] += 1
        rows.append(row)
    rhs = [values[g] for g in pts]
    if columns:
        try:
            sol = linalg.solve_rational(rows, rhs)
        except linalg.InconsistentSystem as exc:
            raise InfeasibleWindowError([(pts[i], m) for i, m in sorted(exc.multipliers.items())]) from None
    else:
        sol = []
        bad = [i for i, b in enumerate(rhs) if b != 0]
        if bad:
            raise InfeasibleWindowError([(pts[bad[0]], 1)])
    tables = []
    for i, cl in enumerate(classes):
        t = {}
        for g in pts:
            col = columns.get((i, cl[g]))
            t[g] = _as_number(sol[col]) if col is not None else 0
        tables.append(t)
    integral = all(isinstance(v, int) for t in tables for v in t.values())
    gauge = f"components 2..m vanish on the class of ({base[0]},{base[1]})"
    return WindowSolve(window, tuple(periods), tuple(tables), integral, gauge)


def truth_solve(components: Sequence[tuple[ConfigurationSource, Vec2]], window: Rect) -> WindowSolve:
    """A WindowSolve read off known components (not re-gauged)."""
    pts = window.points()
    tables = tuple({g: src.eval(g) for g in pts} for src, _ in components)
    return WindowSolve(window, tuple(tuple(h) for _, h in components), tables, True, "ground truth")


@dataclass(frozen=True)
class GaugeResult:
    equivalent: bool
    constants: tuple = ()
    witness: object = None  # (component index, point) on failure


def gauge_distance(w1: WindowSolve, w2: WindowSolve) -> GaugeResult:
    """Constants ``c_i`` (summing to 0) with ``w2_i = w1_i + c_i``."""
    if w1.window != w2.window or len(w1.tables) != len(w2.tables):
        raise ValueError("solves must share the window and the number of components")
    pts = w1.window.points()
    consts = []
    for i, (a, b) in enumerate(zip(w1.tables, w2.tables)):
        c = b[pts[0]] - a[pts[0]]
        for g in pts:
            if b[g] - a[g] != c:
                return GaugeResult(False, witness=(i, g))
        consts.append(_as_number(Fraction(c)))
    if sum(consts) != 0:
        return GaugeResult(False, witness=(None, pts[0]))
    return GaugeResult(True, tuple(consts))
