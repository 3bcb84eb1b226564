# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled counting kernels.

Semantics are defined by the pure-numpy twin ``_accel_py``; the parity tests
hold the two implementations to identical outputs, including the lexicographic
subset enumeration order behind the returned witnesses.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def cell_counts(cells, radices):
    """Frequency of every level combination of the given columns."""
    cdef const cnp.int64_t[:, ::1] c = np.ascontiguousarray(cells, dtype=np.int64)
    cdef const cnp.int64_t[::1] r = np.ascontiguousarray(radices, dtype=np.int64)
    cdef Py_ssize_t N = c.shape[0]
    cdef Py_ssize_t k = c.shape[1]
    if k == 0:
        raise ValueError("need at least one column")
    cdef cnp.int64_t grid = 1
    cdef Py_ssize_t j
    for j in range(k):
        grid *= r[j]
    out_arr = np.zeros(grid, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef cnp.int64_t idx
    cdef Py_ssize_t i
    for i in range(N):
        idx = 0
        for j in range(k):
            idx = idx * r[j] + c[i, j]
        out[idx] += 1
    return out_arr


def scan_balance(cells, levels, t, require_exact):
    """Check every t-column projection for (near-)balance.

    Returns (ok, witness) exactly as the numpy fallback does.
    """
    cdef const cnp.int64_t[:, ::1] c = np.ascontiguousarray(cells, dtype=np.int64)
    cdef const cnp.int64_t[::1] lev = np.ascontiguousarray(levels, dtype=np.int64)
    cdef Py_ssize_t N = c.shape[0]
    cdef Py_ssize_t n = c.shape[1]
    cdef Py_ssize_t tt = t
    cdef bint exact = bool(require_exact)
    if tt < 1 or tt > n:
        raise ValueError("projection size out of range")

    # scratch count buffer sized for the largest possible projection grid
    sorted_lev = np.sort(np.asarray(levels, dtype=np.int64))
    cdef cnp.int64_t max_grid = 1
    cdef Py_ssize_t j
    for j in range(n - tt, n):
        max_grid *= sorted_lev[j]
    buf_arr = np.zeros(max_grid, dtype=np.int64)
    cdef cnp.int64_t[::1] buf = buf_arr

    comb_arr = np.arange(tt, dtype=np.int64)
    cdef cnp.int64_t[::1] comb = comb_arr
    cdef cnp.int64_t grid, idx, q
    cdef Py_ssize_t i, x
    cdef bint ok
    cdef Py_ssize_t pos

    while True:
        grid = 1
        for j in range(tt):
            grid *= lev[comb[j]]
        for x in range(grid):
            buf[x] = 0
        for i in range(N):
            idx = 0
            for j in range(tt):
                idx = idx * lev[comb[j]] + c[i, comb[j]]
            buf[idx] += 1
        ok = True
        if exact:
            if N % grid != 0:
                ok = False
            else:
                q = N // grid
                for x in range(grid):
                    if buf[x] != q:
                        ok = False
                        break
        else:
            q = N // grid
            for x in range(grid):
                if buf[x] != q and buf[x] != q + 1:
                    ok = False
                    break
        if not ok:
            return False, tuple(int(comb[j]) for j in range(tt))

        # advance to the next combination in lexicographic order
        pos = tt - 1
        while pos >= 0 and comb[pos] == n - tt + pos:
            pos -= 1
        if pos < 0:
            return True, None
        comb[pos] += 1
        for j in range(pos + 1, tt):
            comb[j] = comb[j - 1] + 1


def coincidence_hist(cells):
    """Histogram over unordered row pairs of the number of agreeing columns."""
    cdef const cnp.int64_t[:, ::1] c = np.ascontiguousarray(cells, dtype=np.int64)
    cdef Py_ssize_t N = c.shape[0]
    cdef Py_ssize_t k = c.shape[1]
    out_arr = np.zeros(k + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t i, l, j
    cdef cnp.int64_t delta
    for i in range(N - 1):
        for l in range(i + 1, N):
            delta = 0
            for j in range(k):
                if c[i, j] == c[l, j]:
                    delta += 1
            out[delta] += 1
    return out_arr
