# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lattice point enumeration.

Same zigzag walk, same visit order and same compensated summation as
``_enum_py``; only the loop runs in C.
"""

from libc.math cimport exp, floor, fabs, INFINITY

import numpy as np

cdef enum:
    OK = 0
    BUDGET = 1
    STOPPED = 2

cdef enum:
    GAUSS = 0
    POINTS = 1
    SHORTEST = 2


cdef inline bint _is_zero(long long[::1] x, int m) nogil:
    cdef int i
    for i in range(m):
        if x[i] != 0:
            return False
    return True


cdef inline long long _zigzag(long long base, int sgn, long long t) nogil:
    if t & 1:
        return base + sgn * ((t + 1) // 2)
    return base - sgn * (t // 2)


cdef tuple _walk(object R_in, object y_in, double radius2, long long budget, int mode,
                 double alpha, bint skip_zero, double stop_above, long long max_points):
    cdef double[:, ::1] R = np.ascontiguousarray(R_in, dtype=np.float64)
    cdef double[::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef int m = R.shape[0]
    cdef double[::1] rkk2 = np.empty(m)
    cdef double[:, ::1] mu = np.empty((m, m))
    cdef long long[::1] x = np.zeros(m, dtype=np.longlong)
    cdef long long[::1] base = np.zeros(m, dtype=np.longlong)
    cdef long long[::1] step = np.zeros(m, dtype=np.longlong)
    cdef int[::1] sgn = np.ones(m, dtype=np.intc)
    cdef double[::1] center = np.zeros(m)
    cdef double[::1] partial = np.zeros(m + 1)
    cdef int i, j, k
    cdef double total = 0.0, comp = 0.0, t, w, diff, d2, c
    cdef double best = INFINITY
    cdef long long visited = 0
    cdef int status = OK
    cdef list points = []
    cdef list dists = []
    witness = None

    for i in range(m):
        rkk2[i] = R[i, i] * R[i, i]
        for j in range(m):
            mu[i, j] = R[i, j] / R[i, i]

    k = m - 1
    center[k] = y[k]
    base[k] = <long long>floor(y[k] + 0.5)
    x[k] = base[k]
    sgn[k] = 1 if y[k] >= <double>base[k] else -1

    while True:
        visited += 1
        if visited > budget:
            status = BUDGET
            break
        diff = <double>x[k] - center[k]
        d2 = partial[k + 1] + rkk2[k] * diff * diff
        if d2 > radius2:
            # zigzag order: every later candidate on this level is farther
            k += 1
            if k == m:
                break
            step[k] += 1
            x[k] = _zigzag(base[k], sgn[k], step[k])
            continue
        if k == 0:
            if mode == GAUSS:
                if not (skip_zero and _is_zero(x, m)):
                    w = exp(-alpha * d2)
                    t = total + w
                    if fabs(total) >= fabs(w):
                        comp += (total - t) + w
                    else:
                        comp += (w - t) + total
                    total = t
                    if total + comp > stop_above:
                        status = STOPPED
                        break
            elif mode == POINTS:
                points.append(tuple([x[i] for i in range(m)]))
                dists.append(d2)
                if len(points) > max_points:
                    status = BUDGET
                    break
            else:
                if d2 < best and not _is_zero(x, m):
                    best = d2
                    witness = tuple([x[i] for i in range(m)])
                    radius2 = d2
            step[0] += 1
            x[0] = _zigzag(base[0], sgn[0], step[0])
            continue
        partial[k] = d2
        k -= 1
        c = y[k]
        for j in range(k + 1, m):
            c -= mu[k, j] * (<double>x[j] - y[j])
        center[k] = c
        base[k] = <long long>floor(c + 0.5)
        x[k] = base[k]
        sgn[k] = 1 if c >= <double>base[k] else -1
        step[k] = 0

    if mode == GAUSS:
        return total + comp, visited, status
    if mode == POINTS:
        return points, dists, visited, status
    return best, witness, visited, status


def gauss_sum_kernel(R, y, double radius2, double alpha, bint skip_zero,
                     double stop_above, long long budget):
    """Compensated sum of ``exp(-alpha * d2)`` over the enumerated points."""
    return _walk(R, y, radius2, budget, GAUSS, alpha, skip_zero, stop_above, 0)


def points_kernel(R, y, double radius2, long long budget, long long max_points):
    return _walk(R, y, radius2, budget, POINTS, 0.0, False, INFINITY, max_points)


def shortest_kernel(R, double radius2, long long budget):
    return _walk(R, np.zeros(len(R)), radius2, budget, SHORTEST, 0.0, False, INFINITY, 0)
