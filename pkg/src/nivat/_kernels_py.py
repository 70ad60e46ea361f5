"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""
import numpy as np


def gather(grid, x0, y0, offsets, translates):
    offsets = np.asarray(offsets, dtype=np.int64).reshape(-1, 2)
    translates = np.asarray(translates, dtype=np.int64).reshape(-1, 2)
    xs = translates[:, 0, None] + offsets[None, :, 0] - x0
    ys = translates[:, 1, None] + offsets[None, :, 1] - y0
    out = grid[ys, xs]
    return out if grid.dtype == object else out.astype(np.int64, copy=False)


def distinct_row_indices(block):
    seen = {}
    for i, row in enumerate(map(tuple, block.tolist())):
        seen.setdefault(row, i)
    return np.array(sorted(seen.values()), dtype=np.int64)
