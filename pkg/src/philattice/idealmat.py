"""Rotation matrices, ideal matrices H*(f) and the phi-convolutional product."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import ContextMismatch, UnsupportedModulus
from .polyring import Poly, QuotientContext, RingElement, inverse_mod_phi


@dataclass(frozen=True)
class IdealMatrix:
    """H*(f) = [f, Hf, ..., H^{n-1} f] with exact rational entries (row-major)."""

    entries: tuple[tuple[Fraction, ...], ...]
    generator: RingElement

    @property
    def ctx(self) -> QuotientContext:
        return self.generator.ctx

    @property
    def n(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return list(zip(*self.entries))

    def transpose(self) -> list[list[Fraction]]:
        return linalg.transpose(self.entries)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.entries for v in row)

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])

    def __matmul__(self, other):
        if isinstance(other, IdealMatrix):
            return linalg.matmul(self.entries, other.entries)
        return NotImplemented


def rotation_matrix(ctx: QuotientContext) -> list[list[int]]:
    return [list(r) for r in ctx.rotation]


def ideal_matrix(f: RingElement) -> IdealMatrix:
    ctx = f.ctx
    col = list(f.vector)
    cols = []
    for _ in range(ctx.n):
        cols.append(col)
        col = ctx.shift(col)
    entries = tuple(tuple(c[i] for c in cols) for i in range(ctx.n))
    return IdealMatrix(entries, f)


def ideal_matrix_poly_form(f: RingElement) -> IdealMatrix:
    """H*(f) assembled as f_0 I + f_1 H + ... + f_{n-1} H^{n-1}."""
    n = f.ctx.n
    acc = [[Fraction(0)] * n for _ in range(n)]
    for fk, hk in zip(f.vector, f.ctx.rotation_powers):
        if fk == 0:
            continue
        for i in range(n):
            row = hk[i]
            for j in range(n):
                acc[i][j] += fk * row[j]
    return IdealMatrix(tuple(tuple(r) for r in acc), f)


def conv_product(f: RingElement, g: RingElement) -> RingElement:
    """f * g = H*(f) g, the coefficient-vector form of f(x) g(x) mod phi."""
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx} vs {g.ctx}")
    return f.ctx.element(linalg.matvec(ideal_matrix(f).entries, g.vector))


def ideal_det(f: RingElement) -> tuple[Fraction, float]:
    """Exact determinant of H*(f) and the spectral product prod f(w_i)."""
    exact = linalg.det(ideal_matrix(f).entries)
    prod = 1 + 0j
    for w in f.ctx.roots:
        prod *= f.rep.evalc(w)
    return exact, prod.real


def ideal_inverse(f: RingElement) -> IdealMatrix:
    u = inverse_mod_phi(f)
    inv = ideal_matrix(u)
    assert linalg.matmul(ideal_matrix(f).entries, inv.entries) == linalg.identity(f.ctx.n)
    return inv


@dataclass(frozen=True)
class ConjugateVector:
    value: RingElement

    @property
    def vector(self) -> tuple[Fraction, ...]:
        return self.value.vector


def conjugate(g: RingElement | ConjugateVector) -> ConjugateVector:
    """Reverse the coefficient vector: (g_0, ..., g_{n-1}) -> (g_{n-1}, ..., g_0)."""
    if isinstance(g, ConjugateVector):
        g = g.value
    return ConjugateVector(g.ctx.element(reversed(g.vector)))


def circulant_transpose(g: RingElement) -> IdealMatrix:
    """(H*(g))' written as the ideal matrix H*(H g_bar); phi must be x^n - 1."""
    ctx = g.ctx
    if not ctx.is_x_n_minus_one:
        raise UnsupportedModulus(f"transpose identity needs phi = x^n - 1, got {ctx.phi}")
    gbar = conjugate(g).vector
    result = ideal_matrix(ctx.element(ctx.shift(list(gbar))))
    if result.rows() != ideal_matrix(g).transpose():
        raise AssertionError("circulant transpose identity violated")
    return result


def ideal_eigenvalues(f: RingElement) -> np.ndarray:
    """Floating eigenvalues of H*(f) (for spectral cross-checks)."""
    return np.linalg.eigvals(ideal_matrix(f).to_float())


def gram_eigenvalues(f: RingElement) -> np.ndarray:
    """Ascending eigenvalues of H*(f)' H*(f)."""
    m = ideal_matrix(f)
    a = linalg.matmul(m.transpose(), m.entries)
    return np.linalg.eigvalsh(np.array([[float(v) for v in row] for row in a]))


def evaluate_at_roots(f: RingElement | Poly, ctx: QuotientContext | None = None) -> list[complex]:
    if isinstance(f, RingElement):
        ctx, p = f.ctx, f.rep
    else:
        p = f
    return [p.evalc(w) for w in ctx.roots]
