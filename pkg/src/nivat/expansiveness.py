"""One-sided expansive and nonexpansive directions.

For an oriented line ``l`` through the origin, ``H(l)`` is the closed half
plane to its left. A *witness* at radius ``r`` is a pair of translates whose
windows agree on ``D_r ∩ H(l)`` (``D_r`` the square ``||g||_inf <= r``) and
differ somewhere in ``D_r`` outside ``H(l)``. A *certificate* is a convex set
``S`` in ``H(l)`` touching ``l`` only at the origin, with the origin
generated in ``S``: then data on ``S \\ {0}`` forces the value at ``0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import annihilator as ann
from . import scan
from .complexity import census, find_minimal_generating, is_generated
from .configuration import ConfigurationSource, verify_periods, window
from .decomposition import Decomposition
from .errors import ComplexityPreconditionError, NoCandidatesError
from .geometry import (
    ConvexLatticeSet,
    OrientedLine,
    Vec2,
    box_points,
    direction_sort_key,
    dot,
    hull,
    norm_inf,
    primitive,
    rectangle,
    yx_key,
)

CERTIFIED = "certified_expansive"
EMPIRICAL = "empirically_expansive"
WITNESSED = "nonexpansive_witnessed"
UNKNOWN = "unknown"

PROBE_VECTORS = ((1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2))
RECT_SIDES = 4


def default_scan_radius(budget: int) -> int:
    return max(64, 16 * budget)


def probe_lines() -> list[OrientedLine]:
    """Both orientations of every primitive direction with ``||v||_inf <= 2``."""
    out = []
    for v in PROBE_VECTORS:
        line = OrientedLine(v)
        out += [line, line.reversed()]
    return sorted(out, key=direction_sort_key)


def _lines_of(s: ConvexLatticeSet) -> list[OrientedLine]:
    out = set()
    for d in s.edge_directions():
        out |= {d, d.reversed()}
    return sorted(out, key=direction_sort_key)


@dataclass(frozen=True)
class Candidates:
    lines: tuple
    reference: ConvexLatticeSet
    source: str  # how the reference set was obtained


def candidate_directions(src: ConfigurationSource, phi: ann.LaurentPoly | None = None,
                         radius: int | None = None) -> Candidates:
    """Oriented lines parallel to edges of a reference generating set.

    The reference is ``S_phi`` when an annihilator is given; otherwise a
    minimal generating set inside the first rectangle with ``P(n, k) <= nk``;
    otherwise the reflected support of a sampled linear relation.
    """
    if phi is not None:
        s = ann.reflected_support(phi)
        return Candidates(tuple(_lines_of(s)), s, f"reflected support of {phi}")
    rects = sorted(((n, k) for n in range(1, RECT_SIDES + 1) for k in range(1, RECT_SIDES + 1)),
                   key=lambda nk: (nk[0] * nk[1], nk))
    for n, k in rects:
        try:
            mg = find_minimal_generating(src, rectangle(n, k), radius)
        except ComplexityPreconditionError:
            continue
        if mg.generating:
            return Candidates(tuple(_lines_of(mg.set)), mg.set, f"minimal generating set in R_{n},{k}")
    for n in range(2, RECT_SIDES + 1):
        pts = rectangle(n, n).points
        vec, _, _ = ann.integer_relation(src, pts, radius)
        if vec is None:
            continue
        sigma, c = ann.relation_polys(sorted(pts, key=yx_key), vec)
        phi = sigma if c == 0 else ann.psi_from(sigma)[1]
        s = ann.reflected_support(phi)
        return Candidates(tuple(_lines_of(s)), s, f"sampled relation {phi} on R_{n},{n}")
    raise NoCandidatesError()


@dataclass(frozen=True)
class Certificate:
    line: OrientedLine
    set: ConvexLatticeSet
    contact: Vec2
    radius: int  # sup-norm radius of the certificate set
    exact: bool
    sample: str


def certificate_sets(line: OrientedLine, budget: int):
    """Single-contact sets tried in order: ``{0, n}``, then
    ``(D_r ∩ {<g, n> >= 1}) ∪ {0}`` for ``r = 1..budget``."""
    n = line.normal
    yield norm_inf(n), hull([(0, 0), n])
    for r in range(1, budget + 1):
        pts = [g for g in box_points(r) if dot(g, n) >= 1] + [(0, 0)]
        yield r, hull(pts)


def expansive_certificate(src: ConfigurationSource, line: OrientedLine, budget: int,
                          radius: int | None = None) -> Certificate | None:
    """First certificate set within ``budget`` whose contact point is
    generated; ``None`` when none is found."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if src.exact:
        radius = None
    elif radius is None:
        radius = default_scan_radius(budget)
    for r, s in certificate_sets(line, budget):
        if r > budget:
            continue
        cen = census(src, s, radius)
        if is_generated(src, s, (0, 0), cen=cen):
            return Certificate(line, s, (0, 0), r, src.exact, cen.sample_region)
    return None


def agreement_radius(line: OrientedLine, r: int) -> int:
    """Radius of the agreement disk for a witness of radius ``r``.

    ``r * ||dir||_inf``, so that every point of ``D_r`` outside ``H(l)``
    keeps the part of its row or column that ``H(l)`` sees. With a plain
    ``D_r`` the truncation alone makes steep rational lines look ambiguous.
    """
    return r * norm_inf(line.dir)


@dataclass(frozen=True)
class Witness:
    line: OrientedLine
    radius: int
    u: Vec2
    u2: Vec2
    agreement: tuple  # points of D_R ∩ H(l), R the agreement radius
    disagreement: tuple  # points of D_r where the two windows differ

    def replay(self, src: ConfigurationSource) -> bool:
        """Re-evaluate both windows from the source."""
        pts = box_points(agreement_radius(self.line, self.radius))
        a = window(src.shift(self.u), pts).as_dict()
        b = window(src.shift(self.u2), pts).as_dict()
        agree = all(a[g] == b[g] for g in self.agreement)
        inner = [g for g in pts if norm_inf(g) <= self.radius]
        diff = tuple(sorted((g for g in inner if a[g] != b[g]), key=yx_key))
        n = self.line.normal
        return agree and diff == self.disagreement and bool(diff) and all(dot(g, n) < 0 for g in diff)


class WitnessScanner:
    """Caches the distinct ``D_R`` patterns of a source (with first
    translates) so that many lines can be tested at the same radius."""

    def __init__(self, src: ConfigurationSource, scan_radius: int | None):
        self.src = src
        self.scan_radius = None if src.exact else scan_radius
        self._cache: dict = {}

    def patterns(self, big: int) -> tuple:
        if big not in self._cache:
            pts = box_points(big)
            found = scan.pattern_translates(self.src, pts, self.scan_radius)
            self._cache[big] = (pts, found)
        return self._cache[big]

    def witness(self, line: OrientedLine, r: int) -> Witness | None:
        if r < 1:
            raise ValueError("radius must be >= 1")
        pts, found = self.patterns(agreement_radius(line, r))
        n = line.normal
        h_cols = [i for i, g in enumerate(pts) if dot(g, n) >= 0]
        out_cols = [i for i, g in enumerate(pts) if dot(g, n) < 0 and norm_inf(g) <= r]
        groups: dict = {}
        for pat in sorted(found):
            key = tuple(pat[i] for i in h_cols)
            inner = tuple(pat[i] for i in out_cols)
            groups.setdefault(key, {}).setdefault(inner, pat)
        for key in sorted(groups):
            variants = groups[key]
            if len(variants) < 2:
                continue
            p1, p2 = (variants[k] for k in sorted(variants)[:2])
            diff = tuple(sorted((pts[i] for i in out_cols if p1[i] != p2[i]), key=yx_key))
            return Witness(
                line, r, found[p1], found[p2],
                tuple(pts[i] for i in h_cols), diff,
            )
        return None


def nonexpansive_witness(src: ConfigurationSource, line: OrientedLine, radius: int,
                         scan_radius: int | None = None) -> Witness | None:
    """Pair of translates agreeing on ``D_R ∩ H(l)`` (see
    :func:`agreement_radius`) and differing in ``D_r`` outside ``H(l)``,
    searched over translates in ``[-scan_radius, scan_radius]^2``."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    scan_radius = scan_radius if scan_radius is not None else default_scan_radius(radius)
    return WitnessScanner(src, scan_radius).witness(line, radius)


@dataclass(frozen=True)
class DirectionStatus:
    line: OrientedLine
    status: str
    radius: int | None
    role: str  # "candidate" or "probe"
    evidence: object = field(default=None, compare=False)

    @property
    def expansive(self) -> bool:
        return self.status in (CERTIFIED, EMPIRICAL)

    def describe(self) -> str:
        if self.status == WITNESSED:
            return f"{WITNESSED}(r={self.radius})"
        if self.status == EMPIRICAL:
            return f"{EMPIRICAL}(r={self.radius})"
        if self.status == UNKNOWN:
            return f"{UNKNOWN}(budget {self.radius})"
        return self.status


def is_doubly_periodic(src: ConfigurationSource) -> bool:
    return bool(src.exact) and len(src.periods) >= 2 and verify_periods(src)


def classify_line(src, line: OrientedLine, budget: int, scanner: WitnessScanner,
                  sample_radius: int | None, role: str) -> DirectionStatus:
    for r in range(1, budget + 1):
        w = scanner.witness(line, r)
        if w is not None:
            return DirectionStatus(line, WITNESSED, r, role, w)
    cert = expansive_certificate(src, line, budget, sample_radius)
    if cert is not None:
        status = CERTIFIED if cert.exact else EMPIRICAL
        return DirectionStatus(line, status, cert.radius, role, cert)
    return DirectionStatus(line, UNKNOWN, budget, role)


@dataclass(frozen=True)
class Classification:
    statuses: tuple
    candidates: Candidates | None
    sample_radius: int | None
    note: str = ""

    def by_line(self) -> dict:
        return {s.line: s for s in self.statuses}


def classify(src: ConfigurationSource, budget: int = 8, phi=None,
             radius: int | None = None) -> Classification:
    """Status of every candidate line and of the probe lines.

    Doubly periodic sources with verified periods are expansive in every
    direction and short-circuit to ``certified_expansive``.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    sample = None if src.exact else (radius or default_scan_radius(budget))
    probes = probe_lines()
    if is_doubly_periodic(src):
        sts = [DirectionStatus(p, CERTIFIED, None, "probe", "doubly periodic") for p in probes]
        return Classification(tuple(sts), None, sample, "doubly periodic: every direction expansive")
    try:
        cands = candidate_directions(src, phi, sample)
        cand_lines = list(cands.lines)
    except NoCandidatesError:
        cands, cand_lines = None, []
    scanner = WitnessScanner(src, sample)
    sts = [classify_line(src, l, budget, scanner, sample, "candidate") for l in cand_lines]
    sts += [classify_line(src, p, budget, scanner, sample, "probe")
            for p in probes if p not in cand_lines]
    sts.sort(key=lambda s: direction_sort_key(s.line))
    return Classification(tuple(sts), cands, sample)


@dataclass(frozen=True)
class Verdict:
    claim: str
    outcome: str  # pass, fail, unknown, vacuous-pass, fail-expected: ...
    evidence: str


@dataclass(frozen=True)
class SzabadosReport:
    period_lines: tuple
    detected_nonexpansive: tuple  # (line, radius)
    verdicts: tuple
    classification: Classification

    def verdict(self, claim: str) -> Verdict:
        return next(v for v in self.verdicts if v.claim == claim)

    @property
    def passed(self) -> bool:
        return all(v.outcome in ("pass", "vacuous-pass") for v in self.verdicts)


def szabados_report(src: ConfigurationSource, d: Decomposition, budget: int = 8,
                    radius: int | None = None) -> SzabadosReport:
    """Compare witnessed nonexpansive lines with the decomposition periods.

    (A) every witnessed line is parallel to a period; (B) every period line is
    witnessed in both orientations; (C) every other candidate or probe line
    is (empirically) expansive.
    """
    period_dirs = sorted({primitive(h)[0].unoriented() for h in d.periods})
    phi = ann.difference_product(d.periods)
    if not ann.annihilates(phi, src, 20).holds:
        phi = None
    cls = classify(src, budget, phi, radius)
    witnessed = [s for s in cls.statuses if s.status == WITNESSED]
    detected = tuple((s.line, s.radius) for s in witnessed)

    def is_period_line(line):
        return line.unoriented() in period_dirs

    off = [s for s in witnessed if not is_period_line(s.line)]
    if not witnessed:
        a = Verdict("A", "vacuous-pass", "no nonexpansive line witnessed")
    elif off:
        a = Verdict("A", "fail", "witnessed lines without a period: " + ", ".join(str(s.line) for s in off))
    else:
        a = Verdict("A", "pass", "every witnessed line contains a period")

    if is_doubly_periodic(src):
        b = Verdict("B", "fail-expected: doubly periodic", "every direction of a doubly periodic source is expansive")
    else:
        by = cls.by_line()
        missing, refuted = [], []
        for u in period_dirs:
            for line in (OrientedLine(u), OrientedLine(u).reversed()):
                st = by.get(line)
                if st is None or st.status != WITNESSED:
                    (refuted if st is not None and st.expansive else missing).append(line)
        if refuted:
            b = Verdict("B", "fail", "period lines found expansive: " + ", ".join(map(str, refuted)))
        elif missing:
            b = Verdict("B", "unknown", f"no witness within budget {budget} for " + ", ".join(map(str, missing)))
        else:
            b = Verdict("B", "pass", "every period line witnessed in both orientations")

    others = [s for s in cls.statuses if not is_period_line(s.line)]
    bad = [s for s in others if s.status == WITNESSED]
    unk = [s for s in others if s.status == UNKNOWN]
    if bad:
        c = Verdict("C", "fail", "non-period lines witnessed: " + ", ".join(str(s.line) for s in bad))
    elif unk:
        c = Verdict("C", "unknown", "no certificate within budget for " + ", ".join(str(s.line) for s in unk))
    else:
        c = Verdict("C", "pass", f"{len(others)} non-period lines expansive")
    return SzabadosReport(tuple(period_dirs), detected, (a, b, c), cls)
