"""Pure-Python lattice point enumeration (fallback for the compiled kernels).

All three kernels walk the integer vectors ``x`` with
``|R (x - y)|^2 <= radius2`` depth first, for an upper-triangular ``R``
(Cholesky factor of the Gram matrix).  Each level is visited in zigzag
order around its projected center, so the partial distance never decreases
along a level and the first leaf reached is the point nearest ``y``.  Visit
order is fixed; results match the Cython build bit for bit.
"""

import math

OK = 0
BUDGET = 1
STOPPED = 2

_GAUSS = 0
_POINTS = 1
_SHORTEST = 2


def _walk(R, y, radius2, budget, mode, alpha=0.0, skip_zero=False,
          stop_above=math.inf, max_points=0):
    R = [list(map(float, row)) for row in R]
    y = [float(v) for v in y]
    m = len(R)
    rkk2 = [R[k][k] * R[k][k] for k in range(m)]
    mu = [[R[k][j] / R[k][k] for j in range(m)] for k in range(m)]
    x = [0] * m
    base = [0] * m
    sgn = [1] * m
    step = [0] * m
    center = [0.0] * m
    partial = [0.0] * (m + 1)

    total = 0.0
    comp = 0.0
    points = []
    dists = []
    best = math.inf
    witness = None
    visited = 0
    status = OK

    k = m - 1
    center[k] = y[k]
    base[k] = x[k] = math.floor(y[k] + 0.5)
    sgn[k] = 1 if y[k] >= base[k] else -1

    while True:
        visited += 1
        if visited > budget:
            status = BUDGET
            break
        diff = x[k] - center[k]
        d2 = partial[k + 1] + rkk2[k] * diff * diff
        if d2 > radius2:
            # zigzag order: every later candidate on this level is farther
            k += 1
            if k == m:
                break
            step[k] += 1
            t = step[k]
            x[k] = base[k] + (sgn[k] * ((t + 1) // 2) if t & 1 else -sgn[k] * (t // 2))
            continue
        if k == 0:
            if mode == _GAUSS:
                if not (skip_zero and not any(x)):
                    w = math.exp(-alpha * d2)
                    t = total + w
                    if abs(total) >= abs(w):
                        comp += (total - t) + w
                    else:
                        comp += (w - t) + total
                    total = t
                    if total + comp > stop_above:
                        status = STOPPED
                        break
            elif mode == _POINTS:
                points.append(tuple(x))
                dists.append(d2)
                if len(points) > max_points:
                    status = BUDGET
                    break
            else:
                if d2 < best and any(x):
                    best = d2
                    witness = tuple(x)
                    radius2 = d2
            step[0] += 1
            t = step[0]
            x[0] = base[0] + (sgn[0] * ((t + 1) // 2) if t & 1 else -sgn[0] * (t // 2))
            continue
        partial[k] = d2
        k -= 1
        c = y[k]
        row = mu[k]
        for j in range(k + 1, m):
            c -= row[j] * (x[j] - y[j])
        center[k] = c
        base[k] = x[k] = math.floor(c + 0.5)
        sgn[k] = 1 if c >= base[k] else -1
        step[k] = 0

    if mode == _GAUSS:
        return total + comp, visited, status
    if mode == _POINTS:
        return points, dists, visited, status
    return best, witness, visited, status


def gauss_sum_kernel(R, y, radius2, alpha, skip_zero, stop_above, budget):
    """Compensated sum of ``exp(-alpha * d2)`` over the enumerated points."""
    return _walk(R, y, radius2, budget, _GAUSS, alpha=alpha,
                 skip_zero=skip_zero, stop_above=stop_above)


def points_kernel(R, y, radius2, budget, max_points):
    return _walk(R, y, radius2, budget, _POINTS, max_points=max_points)


def shortest_kernel(R, radius2, budget):
    return _walk(R, [0.0] * len(R), radius2, budget, _SHORTEST)
