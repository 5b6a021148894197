# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pairwise preference counting over a utility table."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def preference_counts(double[:, ::1] U):
    cdef Py_ssize_t n = U.shape[0], m = U.shape[1]
    cdef Py_ssize_t i, a, b, a0, b0, a1, b1, ta, tb
    cdef Py_ssize_t tile = 64, tiles = (m + 63) // 64
    cdef int up, down
    cdef double x, y
    # one row per alternative keeps the voter loop contiguous; tiles keep
    # both the P[a, b] and P[b, a] writes in cache
    cdef double[:, ::1] T = np.ascontiguousarray(np.asarray(U).T)
    out = np.zeros((m, m), dtype=np.int32)
    cdef int[:, ::1] P = out
    with nogil:
        for ta in range(tiles):
            a0 = ta * tile
            a1 = min(a0 + tile, m)
            for tb in range(ta, tiles):
                b0 = tb * tile
                b1 = min(b0 + tile, m)
                for a in range(a0, a1):
                    for b in range(max(b0, a + 1), b1):
                        up = 0
                        down = 0
                        for i in range(n):
                            x = T[a, i]
                            y = T[b, i]
                            up += x > y
                            down += y > x
                        P[a, b] = up
                        P[b, a] = down
    return out


def counts_against(double[::1] ux, double[:, ::1] U):
    cdef Py_ssize_t n = U.shape[0], m = U.shape[1]
    cdef Py_ssize_t i, b
    cdef int c
    out = np.zeros(m, dtype=np.int32)
    cdef int[::1] C = out
    for b in range(m):
        c = 0
        for i in range(n):
            if ux[i] > U[i, b]:
                c += 1
        C[b] = c
    return out


def first_dominators(double[:, ::1] U, int threshold, Py_ssize_t first):
    cdef Py_ssize_t n = U.shape[0], m = U.shape[1]
    cdef Py_ssize_t i, a, b, s
    cdef int c
    out = np.full(m, -1, dtype=np.int64)
    cdef long long[::1] R = out
    for b in range(m):
        for s in range(-1, m):
            if s == -1:
                if first < 0:
                    continue
                a = first
            else:
                a = s
                if a == first:
                    continue
            if a == b:
                continue
            c = 0
            for i in range(n):
                if U[i, a] > U[i, b]:
                    c += 1
            if c >= threshold:
                R[b] = a
                break
    return out
