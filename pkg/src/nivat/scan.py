"""Translate scans: which translates ``u`` a census visits, and the blocks of
pattern rows ``(eta_{g+u})_{g in offsets}`` they produce.

Three plans:

* ``exact``: one translate per coset of the period lattice (doubly periodic
  sources only); the pattern set is then complete.
* ``line``: sources whose value depends only on ``det(h, g)``. The box
  ``[-R, R]^2`` of translates is replaced by ``t * e`` with ``det(h, e) = 1``
  for ``t`` ranging over ``det(h, [-R, R]^2)``; both visit exactly the same
  patterns, the second once each.
* ``box``: every translate in ``[-R, R]^2``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from . import kernels
from .configuration import INT64_SAFE, ConfigurationSource, _ext_gcd
from .errors import ExactnessUnavailable
from .geometry import Vec2, det

MAX_CELLS = 1 << 21


@dataclass(frozen=True)
class ScanPlan:
    kind: str
    radius: int | None
    description: str

    @property
    def exact(self) -> bool:
        return self.kind == "exact"


def transversal(h: Vec2) -> Vec2:
    """A vector ``e`` with ``det(h, e) = 1`` for primitive ``h``."""
    g, s, t = _ext_gcd(h[0], -h[1])
    if g != 1:
        raise ValueError(f"{h} is not primitive")
    # s*hx - t*hy = 1 = det(h, (t, s))
    return (t, s)


def plan_for(src: ConfigurationSource, radius: int | None) -> ScanPlan:
    if radius is None:
        if not src.exact:
            raise ExactnessUnavailable(src)
        return ScanPlan("exact", None, "exact: one translate per coset of the period lattice")
    if radius < 0:
        raise ValueError("sampling radius must be >= 0")
    if src.line_reduction() is not None:
        h = src.line_reduction()[0]
        return ScanPlan(
            "line", radius, f"sampled: u in [-{radius},{radius}]^2 (reduced along period {h})"
        )
    return ScanPlan("box", radius, f"sampled: u in [-{radius},{radius}]^2")


def block_specs(
    src: ConfigurationSource,
    offsets: Sequence[Vec2],
    radius: int | None,
    backend: str | None = None,
) -> list[Callable[[], tuple[np.ndarray, np.ndarray]]]:
    """Deferred chunks; calling one returns ``(translates, rows)`` where row
    ``i`` is the pattern of translate ``translates[i]`` on ``offsets``."""
    plan = plan_for(src, radius)
    offs = np.array(list(offsets), dtype=np.int64).reshape(-1, 2)
    k = max(len(offs), 1)

    if plan.kind == "exact":
        us = np.array(src.fundamental_domain(), dtype=np.int64).reshape(-1, 2)

        def run_exact():
            if len(offs) == 0:
                return us, np.zeros((len(us), 0), dtype=np.int64)
            if src.max_abs() >= INT64_SAFE:
                x0 = int(us[:, 0].min() + offs[:, 0].min())
                y0 = int(us[:, 1].min() + offs[:, 1].min())
                x1 = int(us[:, 0].max() + offs[:, 0].max()) + 1
                y1 = int(us[:, 1].max() + offs[:, 1].max()) + 1
                grid = src.grid(x0, x1, y0, y1)
                return us, kernels.gather(grid, x0, y0, offs, us, backend)
            # few translates: evaluate u + offsets directly
            xs = us[:, 0, None] + offs[None, :, 0]
            ys = us[:, 1, None] + offs[None, :, 1]
            return us, src._grid(xs, ys)

        return [run_exact]

    if plan.kind == "line":
        h, f = src.line_reduction()
        e = transversal(h)
        uy, ux = np.mgrid[-radius:radius + 1, -radius:radius + 1]
        all_ts = np.unique(h[0] * uy - h[1] * ux).astype(np.int64)
        dets = np.array([det(h, (int(x), int(y))) for x, y in offs], dtype=np.int64)
        d_offs = np.stack([dets, np.zeros_like(dets)], axis=1) if len(offs) else offs
        step = max(1, MAX_CELLS // k)
        specs = []
        for start in range(0, len(all_ts), step):
            chunk = all_ts[start:start + step]

            def run_line(ts=chunk):
                us = np.stack([ts * e[0], ts * e[1]], axis=1)
                if len(offs) == 0:
                    return us, np.zeros((len(ts), 0), dtype=np.int64)
                lo = int(dets.min() + ts[0])
                hi = int(dets.max() + ts[-1]) + 1
                vals = np.asarray(f(lo, hi)).reshape(1, -1)
                tr = np.stack([ts, np.zeros_like(ts)], axis=1)
                return us, kernels.gather(vals, lo, 0, d_offs, tr, backend)

            specs.append(run_line)
        return specs

    width = 2 * radius + 1
    rows_per = max(1, MAX_CELLS // (k * width))
    specs = []
    for uy_lo in range(-radius, radius + 1, rows_per):
        uy_hi = min(radius, uy_lo + rows_per - 1)

        def run_box(uy_lo=uy_lo, uy_hi=uy_hi):
            uy, ux = np.mgrid[uy_lo:uy_hi + 1, -radius:radius + 1]
            us = np.stack([ux.ravel(), uy.ravel()], axis=1).astype(np.int64)
            if len(offs) == 0:
                return us, np.zeros((len(us), 0), dtype=np.int64)
            x0 = -radius + int(offs[:, 0].min())
            x1 = radius + int(offs[:, 0].max()) + 1
            y0 = uy_lo + int(offs[:, 1].min())
            y1 = uy_hi + int(offs[:, 1].max()) + 1
            grid = src.grid(x0, x1, y0, y1)
            return us, kernels.gather(grid, x0, y0, offs, us, backend)

        specs.append(run_box)
    return specs


def iter_blocks(src, offsets, radius, backend=None) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    for spec in block_specs(src, offsets, radius, backend):
        yield spec()


def distinct_patterns(src, offsets, radius, backend=None) -> set:
    """All distinct pattern rows over the planned translates."""
    specs = block_specs(src, offsets, radius, backend)

    def work(spec):
        return kernels.distinct_rows(spec()[1], backend)

    workers = min(kernels.worker_count(), len(specs))
    out = set()
    if workers <= 1:
        for spec in specs:
            out |= work(spec)
        return out
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(work, specs):
            out |= part
    return out


def pattern_translates(src, offsets, radius, backend=None) -> dict:
    """Distinct pattern rows mapped to the first translate (in scan order)
    at which each occurs."""
    specs = block_specs(src, offsets, radius, backend)

    def work(spec):
        us, rows = spec()
        idx = kernels.distinct_row_indices(rows, backend)
        return list(zip(map(tuple, rows[idx].tolist()), map(tuple, us[idx].tolist())))

    out: dict = {}
    workers = min(kernels.worker_count(), len(specs))
    if workers <= 1:
        parts = map(work, specs)
    else:
        pool = ThreadPoolExecutor(max_workers=workers)
        parts = pool.map(work, specs)
    try:
        for part in parts:
            for row, u in part:
                out.setdefault(row, u)
    finally:
        if workers > 1:
            pool.shutdown()
    return out
