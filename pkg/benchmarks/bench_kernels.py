"""Compare the compiled and pure-Python census kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--radius 200]

Times pattern enumeration for a few sources and shapes on every available
backend and checks that both backends return the same pattern set.
"""
import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from conftest import fib_sum, tm_layer  # noqa: E402
from nivat import kernels, scan  # noqa: E402
from nivat.geometry import box_points, rectangle  # noqa: E402


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def raw_kernels(repeat):
    rng = np.random.default_rng(0)
    grid = rng.integers(0, 3, size=(600, 600)).astype(np.int64)
    offs = np.array(sorted(rectangle(4, 4).points), dtype=np.int64)
    trs = np.array([[x, y] for y in range(500) for x in range(500)], dtype=np.int64)
    rows = []
    for backend in kernels.available_backends():
        t_g, block = best_of(lambda: kernels.gather(grid, 0, 0, offs, trs, backend), repeat)
        t_d, idx = best_of(lambda: kernels.distinct_row_indices(block, backend), repeat)
        rows.append(("gather 250k x 16", backend, t_g, len(block)))
        rows.append(("distinct 250k x 16", backend, t_d, len(idx)))
    return rows


def census_cases(radius, repeat):
    cases = [
        ("fib-sum R_4,4", fib_sum(), sorted(rectangle(4, 4).points)),
        ("fib-sum D_2", fib_sum(), sorted(box_points(2))),
        ("thue-morse R_5,3", tm_layer(), sorted(rectangle(5, 3).points)),
    ]
    rows = []
    for name, src, pts in cases:
        results = {}
        for backend in kernels.available_backends():
            t, pats = best_of(lambda: scan.distinct_patterns(src, pts, radius, backend), repeat)
            results[backend] = pats
            rows.append((name, backend, t, len(pats)))
        if len(results) > 1 and len({frozenset(p) for p in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {name}")
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--radius", type=int, default=200)
    args = ap.parse_args(argv)
    print(f"default backend: {kernels.BACKEND}; available: {', '.join(kernels.available_backends())}")
    rows = raw_kernels(args.repeat) + census_cases(args.radius, args.repeat)
    base = {name: t for name, b, t, _ in rows if b == "python"}
    print(f"{'case':<22}{'backend':<9}{'seconds':>10}{'count':>9}{'speedup':>9}")
    for name, backend, t, count in rows:
        speed = base[name] / t if t > 0 else float("inf")
        print(f"{name:<22}{backend:<9}{t:>10.4f}{count:>9}{speed:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
