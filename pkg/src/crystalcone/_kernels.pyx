# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice point enumeration kernel (int64, GIL released).

Contract matches :mod:`crystalcone._kernels_py`.  The caller guarantees
that all intermediate sums fit in 64 bits.
"""

import numpy as np
from libcpp.vector cimport vector
from libc.stdint cimport int64_t

BACKEND = "cython"


cdef inline int64_t _floordiv(int64_t a, int64_t b) nogil:
    cdef int64_t q = a // b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef bint _bounds(const int64_t[:, ::1] rows, int start, int stop, int k, int width,
                  int64_t* prefix, int64_t* lo, int64_t* hi, bint* has_lo, bint* has_hi) nogil:
    cdef int j, i
    cdef int64_t a, rest, v
    has_lo[0] = False
    has_hi[0] = False
    for j in range(start, stop):
        a = rows[j, k]
        rest = rows[j, width - 1]
        for i in range(k):
            rest += rows[j, i] * prefix[i]
        if a > 0:
            v = -_floordiv(rest, a)  # ceil(-rest / a)
            if not has_lo[0] or v > lo[0]:
                lo[0] = v
                has_lo[0] = True
        elif a < 0:
            v = _floordiv(rest, -a)
            if not has_hi[0] or v < hi[0]:
                hi[0] = v
                has_hi[0] = True
        elif rest < 0:
            lo[0] = 1
            hi[0] = 0
            has_lo[0] = True
            has_hi[0] = True
            return True
    return has_lo[0] and has_hi[0]


cdef int _run(const int64_t[:, ::1] rows, const int[:] starts, int d,
              int64_t first_lo, int64_t first_hi, vector[int64_t]* out) nogil:
    cdef int width = d + 1
    cdef vector[int64_t] prefix
    cdef vector[int64_t] his
    cdef int64_t lo, hi
    cdef bint hl, hh
    cdef int k = 0, i
    prefix.resize(d)
    his.resize(d)
    if not _bounds(rows, starts[0], starts[1], 0, width, prefix.data(), &lo, &hi, &hl, &hh):
        return -1
    if lo < first_lo:
        lo = first_lo
    if hi > first_hi:
        hi = first_hi
    prefix[0] = lo
    his[0] = hi
    while k >= 0:
        if prefix[k] > his[k]:
            k -= 1
            if k >= 0:
                prefix[k] += 1
            continue
        if k == d - 1:
            for i in range(d):
                out.push_back(prefix[i])
            prefix[k] += 1
            continue
        k += 1
        if not _bounds(rows, starts[k], starts[k + 1], k, width, prefix.data(), &lo, &hi, &hl, &hh):
            return -1
        prefix[k] = lo
        his[k] = hi
    return 0


def enumerate_points(systems, int d, first_lo=None, first_hi=None):
    """All integer points of the prefix systems, lexicographically ordered."""
    if d == 0:
        return [()]
    starts_py = [0]
    total = 0
    for s in systems:
        total += len(s)
        starts_py.append(total)
    flat = np.zeros((max(total, 1), d + 1), dtype=np.int64)
    pos = 0
    for s in systems:
        for r in s:
            flat[pos, :] = r
            pos += 1
    cdef const int64_t[:, ::1] rows = flat
    cdef const int[:] starts = np.asarray(starts_py, dtype=np.intc)
    cdef int64_t flo = -(1 << 62) if first_lo is None else first_lo
    cdef int64_t fhi = (1 << 62) if first_hi is None else first_hi
    cdef vector[int64_t] out
    cdef int status
    with nogil:
        status = _run(rows, starts, d, flo, fhi, &out)
    if status != 0:
        raise OverflowError("unbounded coordinate")
    n = out.size() // d
    arr = np.empty(out.size(), dtype=np.int64)
    cdef int64_t[::1] view = arr
    cdef size_t j
    for j in range(out.size()):
        view[j] = out[j]
    return list(map(tuple, arr.reshape(n, d).tolist()))
