# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the kernels in ``_kernels_py``.

Same signatures, same tie-breaking; see that module for the contracts.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport hypot

cnp.import_array()

NAME = "cython"


def max_weighted_distance(qx, qy, w, zx, zy):
    cdef const double[::1] cqx = np.ascontiguousarray(qx, dtype=np.float64)
    cdef const double[::1] cqy = np.ascontiguousarray(qy, dtype=np.float64)
    cdef const double[::1] cw = np.ascontiguousarray(w, dtype=np.float64)
    cdef const double[::1] czx = np.ascontiguousarray(zx, dtype=np.float64)
    cdef const double[::1] czy = np.ascontiguousarray(zy, dtype=np.float64)
    cdef Py_ssize_t n = cqx.shape[0], m = czx.shape[0], a, i
    out = np.zeros(m, dtype=np.float64)
    cdef double[::1] cout = out
    cdef double best, v, x, y
    with nogil:
        for a in range(m):
            x = czx[a]
            y = czy[a]
            best = 0.0
            for i in range(n):
                v = cw[i] * hypot(x - cqx[i], y - cqy[i])
                if v > best:
                    best = v
            cout[a] = best
    return out


def lipschitz_scan(vx, vy, dpow):
    cdef const double[::1] cvx = np.ascontiguousarray(vx, dtype=np.float64)
    cdef const double[::1] cvy = np.ascontiguousarray(vy, dtype=np.float64)
    cdef const double[:, ::1] cd = np.ascontiguousarray(dpow, dtype=np.float64)
    cdef Py_ssize_t n = cvx.shape[0], i, j
    cdef Py_ssize_t bi = -1, bj = -1
    cdef double best = -1.0, v
    if n < 2:
        return 0.0, -1, -1
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                v = hypot(cvx[i] - cvx[j], cvy[i] - cvy[j]) / cd[i, j]
                if v > best:
                    best = v
                    bi = i
                    bj = j
    return best, bi, bj


def triangle_violation(dist, double rtol):
    cdef const double[:, ::1] d = np.ascontiguousarray(dist, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0], i, j, k
    cdef double dij
    for i in range(n):
        for j in range(i + 1, n):
            dij = d[i, j]
            for k in range(n):
                if dij - (d[i, k] + d[k, j]) > rtol * dij:
                    return int(i), int(k), int(j)
    return None
