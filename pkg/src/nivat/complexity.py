"""Pattern censuses, generated points, generating sets, extension counts and
the one-dimensional Morse-Hedlund detector."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import scan
from .configuration import ConfigurationSource, Pattern
from .errors import ComplexityPreconditionError, PatternNotInLanguage
from .geometry import (
    ConvexLatticeSet,
    OrientedLine,
    Vec2,
    convex_subsets,
    hull,
    rectangle,
    support_line,
    yx_key,
)
from .sequences import Sequence1D

EXHAUSTIVE_LIMIT = 14


@dataclass(frozen=True)
class PatternCensus:
    """Distinct patterns of a configuration on ``shape``.

    ``patterns`` holds value tuples aligned with ``shape`` (canonical row,
    column order). When ``exact`` is false the count is only a lower bound on
    the true complexity.
    """

    shape: tuple
    patterns: frozenset
    exact: bool
    sample_region: str

    @property
    def count(self) -> int:
        return len(self.patterns)

    def __len__(self):
        return len(self.patterns)

    def project(self, points: Iterable[Vec2]) -> "PatternCensus":
        """Census of a sub-shape over the same translates."""
        sub = tuple(sorted(set(points), key=yx_key))
        index = {g: i for i, g in enumerate(self.shape)}
        missing = [g for g in sub if g not in index]
        if missing:
            raise ValueError(f"points {missing} are not in the census shape")
        cols = [index[g] for g in sub]
        pats = frozenset(tuple(p[c] for c in cols) for p in self.patterns)
        return PatternCensus(sub, pats, self.exact, self.sample_region)

    def pattern_objects(self) -> list[Pattern]:
        return [Pattern(self.shape, p) for p in sorted(self.patterns)]


def _points(s) -> tuple:
    pts = s.points if isinstance(s, ConvexLatticeSet) else s
    return tuple(sorted(set(pts), key=yx_key))


def census(src: ConfigurationSource, shape, radius: int | None = None, backend=None) -> PatternCensus:
    """Patterns ``(T^u eta)|_S`` over the translates of the scan plan.

    ``radius=None`` requests exact enumeration (doubly periodic sources);
    otherwise translates range over ``[-radius, radius]^2``.
    """
    pts = _points(shape)
    plan = scan.plan_for(src, radius)
    pats = scan.distinct_patterns(src, pts, radius, backend)
    return PatternCensus(pts, frozenset(pats), plan.exact, plan.description)


def complexity(src, shape, radius=None) -> int:
    return census(src, shape, radius).count


def complexity_rect(src, n: int, k: int, radius: int | None = None) -> int:
    """``P(n, k)``: number of ``R_{n,k}`` patterns."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be >= 1")
    return census(src, rectangle(n, k), radius).count


def is_generated(src, shape, g: Vec2, radius=None, *, cen: PatternCensus | None = None) -> bool:
    """``P(S) == P(S \\ {g})`` under the same sampling."""
    pts = _points(shape)
    if g not in pts:
        raise ValueError(f"{g} is not in the shape")
    cen = cen or census(src, pts, radius)
    rest = [p for p in pts if p != g]
    return cen.project(rest).count == cen.count


def is_generating_set(src, s: ConvexLatticeSet, radius=None, *, cen: PatternCensus | None = None) -> bool:
    cen = cen or census(src, s, radius)
    return all(is_generated(src, s, v, cen=cen) for v in s.vertices)


@dataclass(frozen=True)
class BoundaryEntry:
    direction: OrientedLine
    contact: tuple
    drop: int  # P(S) - P(S \ l_S)
    bound: int  # |S ∩ l_S| - 1

    @property
    def holds(self) -> bool:
        return self.drop <= self.bound


@dataclass(frozen=True)
class MinimalGenerating:
    set: ConvexLatticeSet
    count: int
    method: str  # "exhaustive" or "greedy"
    generating: bool
    boundary: tuple = field(default=())

    @property
    def cardinality(self) -> int:
        return len(self.set)


def boundary_report(s: ConvexLatticeSet, cen: PatternCensus) -> list[BoundaryEntry]:
    """Drops ``P(S) - P(S \\ l_S)`` against ``|S ∩ l_S| - 1`` along every edge
    direction of ``s``."""
    sub = cen.project(s.points)
    out = []
    for d in s.edge_directions():
        _, contact = support_line(d, s)
        rest = s.points - contact
        drop = sub.count - sub.project(rest).count
        out.append(BoundaryEntry(d, tuple(sorted(contact, key=yx_key)), drop, len(contact) - 1))
    return out


def _greedy_descent(u: ConvexLatticeSet, feasible):
    cur = u
    while True:
        options = []
        for v in sorted(cur.vertices, key=yx_key):
            options.append(cur.points - {v})
        for d in cur.edge_directions() if len(cur) > 1 else []:
            _, contact = support_line(d, cur)
            options.append(cur.points - contact)
        for rest in options:
            if rest and feasible(rest):
                cur = hull(rest)
                break
        else:
            return cur


def find_minimal_generating(src, u: ConvexLatticeSet, radius=None) -> MinimalGenerating:
    """An inclusion-minimal convex ``T ⊆ U`` with ``P(T) <= |T|``.

    Exhaustive over all convex subsets when ``|U| <= 14`` (ties broken by
    size, then canonical serialization); greedy support-slice descent above.
    """
    cen = census(src, u, radius)
    if cen.count > len(u):
        raise ComplexityPreconditionError(cen.count, len(u))

    def count(points):
        return cen.project(points).count

    if len(u) <= EXHAUSTIVE_LIMIT:
        subsets = convex_subsets(u)
        feasible = [t for t in subsets if count(t.points) <= len(t)]
        minimal = [
            t for t in feasible
            if not any(o.points < t.points for o in feasible)
        ]
        best = min(minimal, key=lambda t: (len(t), t.canonical()))
        method = "exhaustive"
    else:
        best = _greedy_descent(u, lambda pts: count(pts) <= len(pts))
        method = "greedy"
    return MinimalGenerating(
        set=best,
        count=count(best.points),
        method=method,
        generating=is_generating_set(src, best, cen=cen.project(best.points)),
        boundary=tuple(boundary_report(best, cen)),
    )


def _gamma_tuple(gamma, rest_pts) -> tuple:
    if isinstance(gamma, Pattern):
        d = gamma.as_dict()
        return tuple(d[g] for g in rest_pts)
    if isinstance(gamma, dict):
        return tuple(gamma[g] for g in rest_pts)
    return tuple(gamma)


def extension_counts(src, s: ConvexLatticeSet, line: OrientedLine, radius=None,
                     *, cen: PatternCensus | None = None) -> dict:
    """``gamma -> N_S(line, gamma)`` for every observed pattern on ``S \\ l_S``.

    Keys are value tuples in the canonical order of ``S \\ l_S``.
    """
    cen = cen or census(src, s, radius)
    _, contact = support_line(line, s)
    rest = [g for g in cen.shape if g not in contact]
    cols = [cen.shape.index(g) for g in rest]
    counts: dict = {}
    for p in cen.patterns:
        key = tuple(p[c] for c in cols)
        counts[key] = counts.get(key, 0) + 1
    return dict(sorted(counts.items()))


def extension_count(src, s: ConvexLatticeSet, line: OrientedLine, gamma, radius=None,
                    *, cen: PatternCensus | None = None) -> int:
    _, contact = support_line(line, s)
    rest = [g for g in _points(s) if g not in contact]
    counts = extension_counts(src, s, line, radius, cen=cen)
    key = _gamma_tuple(gamma, rest)
    if key not in counts:
        raise PatternNotInLanguage()
    return counts[key]


@dataclass(frozen=True)
class MHVerdict:
    kind: str  # "periodic", "preperiodic" or "no-bound"
    complexity: int
    period: int | None = None
    offset: int | None = None

    def __str__(self):
        if self.kind == "periodic":
            return f"periodic(period {self.period})"
        if self.kind == "preperiodic":
            return f"preperiodic(offset {self.offset}, period {self.period})"
        return "no-bound"


def morse_hedlund(seq, n: int, horizon: int) -> MHVerdict:
    """One-sided Morse-Hedlund detector on ``seq[0:horizon]``.

    When at most ``n`` distinct length-``n`` words occur, return the least
    period ``p <= n`` that holds from index ``n`` on (verified to the end of
    the horizon), together with the least offset from which it holds.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if horizon < 3 * n:
        raise ValueError("horizon must be >= 3n")
    if isinstance(seq, Sequence1D):
        word = seq.word(0, horizon)
    else:
        word = list(seq)[:horizon]
        if len(word) < horizon:
            raise ValueError("word shorter than the horizon")
    factors = {tuple(word[i:i + n]) for i in range(horizon - n + 1)}
    c = len(factors)
    if c > n:
        return MHVerdict("no-bound", c)
    for p in range(1, n + 1):
        bad = [i for i in range(horizon - p) if word[i + p] != word[i]]
        start = bad[-1] + 1 if bad else 0
        if start <= n:
            kind = "periodic" if start == 0 else "preperiodic"
            return MHVerdict(kind, c, period=p, offset=start)
    return MHVerdict("no-bound", c)

