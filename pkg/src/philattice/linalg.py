"""Exact linear algebra on row-major matrices of Fractions.

Matrices are plain lists of rows.  Nothing here touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows) -> Matrix:
    from .polyring import as_rational

    return [[as_rational(v) for v in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def lcm_denominator(values) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant; rows are scaled to integers and eliminated fraction-free."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    scale = 1
    ints = []
    for row in a:
        d = lcm_denominator(row)
        scale *= d
        ints.append([int(Fraction(v) * d) for v in row])
    return Fraction(_bareiss(ints), scale)


def _echelon(aug: Matrix, ncols: int) -> list[int]:
    """In-place reduced row echelon on the first ``ncols`` columns; returns pivot columns."""
    pivots = []
    r = 0
    rows = len(aug)
    for c in range(ncols):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(a: Sequence[Sequence]) -> int:
    m = [[Fraction(v) for v in row] for row in a]
    if not m:
        return 0
    return len(_echelon(m, len(m[0])))


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``a x = b`` for ``a`` with independent columns.

    Returns ``None`` when the system is inconsistent (``b`` outside the
    column span).
    """
    ncols = len(a[0])
    aug = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    pivots = _echelon(aug, ncols)
    if len(pivots) != ncols:
        raise ValueError("matrix columns are linearly dependent")
    for row in aug[ncols:]:
        if row[-1] != 0:
            return None
    return [aug[i][-1] for i in range(ncols)]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    if len(_echelon(aug, n)) != n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in aug]


def hnf_rows(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite normal form of the integer row lattice.

    Returns the nonzero rows: echelon form with positive pivots and the
    entries above each pivot reduced into ``[0, pivot)``.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        clean = False
            if clean:
                break
        if r >= len(a) or a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return a[:r]


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None
