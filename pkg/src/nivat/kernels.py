"""Backend selection for the pattern-gathering hot loop.

The compiled extension is used when it imports; ``NIVAT_PURE_PYTHON=1`` forces
the pure-Python fallback. Object-dtype grids (symbols outside int64) always
take the pure path.
"""
from __future__ import annotations

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_FORCE_PURE = os.environ.get("NIVAT_PURE_PYTHON", "") not in ("", "0")

BACKEND = "cython" if (_compiled is not None and not _FORCE_PURE) else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled is not None else ["python"]


def _check_bounds(grid, x0, y0, offsets, translates):
    if len(offsets) == 0 or len(translates) == 0:
        return
    t_lo, t_hi = translates.min(axis=0), translates.max(axis=0)
    o_lo, o_hi = offsets.min(axis=0), offsets.max(axis=0)
    lo_x, lo_y = t_lo + o_lo - (x0, y0)
    hi_x, hi_y = t_hi + o_hi - (x0, y0)
    if lo_x < 0 or lo_y < 0 or hi_x >= grid.shape[1] or hi_y >= grid.shape[0]:
        raise IndexError("gather window exceeds the evaluated grid")


def gather(grid, x0, y0, offsets, translates, backend=None):
    """Row ``i`` holds ``grid[t_i + o_j - (x0, y0)]`` for every offset ``o_j``
    (offsets and translates are ``(n, 2)`` arrays of ``(x, y)``)."""
    offsets = np.ascontiguousarray(offsets, dtype=np.int64).reshape(-1, 2)
    translates = np.ascontiguousarray(translates, dtype=np.int64).reshape(-1, 2)
    _check_bounds(grid, x0, y0, offsets, translates)
    backend = backend or BACKEND
    if backend == "cython" and grid.dtype == np.int64 and _compiled is not None:
        return _compiled.gather(np.ascontiguousarray(grid), int(x0), int(y0), offsets, translates)
    return _kernels_py.gather(grid, int(x0), int(y0), offsets, translates)


def distinct_rows(block, backend=None) -> set:
    """Set of distinct rows as tuples of Python ints."""
    backend = backend or BACKEND
    if block.shape[0] == 0:
        return set()
    if block.shape[1] == 0:
        return {()}
    if backend == "cython" and block.dtype == np.int64 and _compiled is not None:
        idx = _compiled.distinct_row_indices(np.ascontiguousarray(block))
        return set(map(tuple, block[idx].tolist()))
    return set(map(tuple, block.tolist()))


def distinct_row_indices(block, backend=None) -> np.ndarray:
    """Indices of first occurrences of distinct rows, in row order."""
    backend = backend or BACKEND
    if backend == "cython" and block.dtype == np.int64 and _compiled is not None:
        return _compiled.distinct_row_indices(np.ascontiguousarray(block))
    return _kernels_py.distinct_row_indices(block)


def worker_count() -> int:
    """Thread cap from ``NIVAT_THREADS`` (default: CPU count)."""
    n = os.cpu_count() or 1
    env = os.environ.get("NIVAT_THREADS")
    if env:
        try:
            n = max(1, min(n, int(env)))
        except ValueError:
            pass
    return n
