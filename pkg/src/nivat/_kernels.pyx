# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pattern-gathering kernels.

Callers (``nivat.kernels``) validate index ranges before dispatching here.
"""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def gather(const i64[:, ::1] grid, i64 x0, i64 y0,
           const i64[:, ::1] offsets, const i64[:, ::1] translates):
    cdef Py_ssize_t nt = translates.shape[0]
    cdef Py_ssize_t k = offsets.shape[0]
    cdef Py_ssize_t i, j
    cdef i64 tx, ty
    out = np.empty((nt, k), dtype=np.int64)
    cdef i64[:, ::1] o = out
    with nogil:
        for i in range(nt):
            tx = translates[i, 0] - x0
            ty = translates[i, 1] - y0
            for j in range(k):
                o[i, j] = grid[ty + offsets[j, 1], tx + offsets[j, 0]]
    return out



cdef inline cnp.uint64_t _mix(cnp.uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * <cnp.uint64_t>0xbf58476d1ce4e5b9
    z = (z ^ (z >> 27)) * <cnp.uint64_t>0x94d049bb133111eb
    return z ^ (z >> 31)


def distinct_row_indices(const i64[:, ::1] block):
    """Indices of the first occurrence of each distinct row, in row order.

    Open addressing on 64-bit row hashes; equal hashes are confirmed by a
    full row comparison, so the result is exact.
    """
    cdef Py_ssize_t n = block.shape[0]
    cdef Py_ssize_t k = block.shape[1]
    cdef Py_ssize_t cap = 1
    while cap < 2 * n + 2:
        cap <<= 1
    cdef cnp.uint64_t mask = cap - 1
    table_arr = np.full(cap, -1, dtype=np.int64)
    hash_arr = np.empty(max(n, 1), dtype=np.uint64)
    out_arr = np.empty(max(n, 1), dtype=np.int64)
    cdef i64[::1] table = table_arr
    cdef cnp.uint64_t[::1] hashes = hash_arr
    cdef i64[::1] out = out_arr
    cdef Py_ssize_t i, j, m = 0
    cdef i64 r
    cdef cnp.uint64_t h, slot
    cdef bint same
    with nogil:
        for i in range(n):
            h = <cnp.uint64_t>0x9e3779b97f4a7c15
            for j in range(k):
                h = _mix(h ^ <cnp.uint64_t>block[i, j])
            hashes[i] = h
            slot = h & mask
            while True:
                r = table[slot]
                if r < 0:
                    table[slot] = i
                    out[m] = i
                    m += 1
                    break
                if hashes[r] == h:
                    same = True
                    for j in range(k):
                        if block[r, j] != block[i, j]:
                            same = False
                            break
                    if same:
                        break
                slot = (slot + 1) & mask
    return out_arr[:m]
