"""Lattices given by exact rational bases (basis vectors are columns).

Exact arithmetic for Gram matrices, duals, Gram-Schmidt, membership, sums
and indices; floating point only for lengths reported to the caller and
for the enumeration kernels (whose candidates are re-checked exactly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .errors import (
    DimensionMismatch,
    EnumerationBudgetExceeded,
    NotSublattice,
    RankDeficient,
)
from .polyring import as_rational, rational_str

ENUMERATION_BUDGET = 10**7


@dataclass(frozen=True)
class LatticeBasis:
    """Lattice L(B) = {B x : x integer} for an n x m rational matrix B."""

    columns: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        cols = tuple(tuple(as_rational(v) for v in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise RankDeficient("a basis needs at least one vector")
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise DimensionMismatch("basis vectors have different lengths")
        if len(cols) > n:
            raise RankDeficient(f"{len(cols)} vectors in dimension {n} are dependent")
        if self.det_gram == 0:
            raise RankDeficient("basis vectors are linearly dependent")

    @classmethod
    def from_columns(cls, columns) -> "LatticeBasis":
        return cls(tuple(tuple(c) for c in columns))

    @classmethod
    def from_rows(cls, rows) -> "LatticeBasis":
        """Build from the row-major matrix B (so each column is a basis vector)."""
        return cls(tuple(zip(*rows)))

    @property
    def n(self) -> int:
        return len(self.columns[0])

    @property
    def m(self) -> int:
        return len(self.columns)

    @property
    def full_rank(self) -> bool:
        return self.m == self.n

    def matrix(self) -> list[list[Fraction]]:
        return linalg.transpose(self.columns)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(linalg.dot(a, b) for b in self.columns) for a in self.columns)

    @cached_property
    def det_gram(self) -> Fraction:
        return linalg.det(self.gram)

    @cached_property
    def cholesky(self) -> np.ndarray:
        """Upper-triangular R with R'R = B'B (float), used by enumeration."""
        g = np.array([[float(v) for v in row] for row in self.gram])
        return np.ascontiguousarray(np.linalg.cholesky(g).T)

    def to_float(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.matrix()])

    def scaled(self, k) -> "LatticeBasis":
        k = as_rational(k)
        return LatticeBasis(tuple(tuple(k * v for v in c) for c in self.columns))

    def vector(self, coeffs: Sequence[int]) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        for a, col in zip(coeffs, self.columns):
            if a:
                for i, v in enumerate(col):
                    out[i] += a * v
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "basis": [[rational_str(v) for v in c] for c in self.columns],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "LatticeBasis":
        basis = cls.from_columns(obj["basis"])
        if obj.get("n", basis.n) != basis.n or obj.get("m", basis.m) != basis.m:
            raise DimensionMismatch(
                f"header says n={obj.get('n')}, m={obj.get('m')} but basis is {basis.n}x{basis.m}"
            )
        return basis


@dataclass(frozen=True)
class GramSpectrum:
    gram: tuple[tuple[Fraction, ...], ...]
    det_gram: Fraction
    eigenvalues: tuple[float, ...]

    @property
    def eigen_min(self) -> float:
        return self.eigenvalues[0]


def gram_spectrum(L: LatticeBasis) -> GramSpectrum:
    g = np.array([[float(v) for v in row] for row in L.gram])
    return GramSpectrum(L.gram, L.det_gram, tuple(float(v) for v in np.linalg.eigvalsh(g)))


def gram_det(L: LatticeBasis) -> tuple[tuple[tuple[Fraction, ...], ...], float]:
    """Gram matrix B'B and d(L) = sqrt(det B'B)."""
    exact = linalg.rational_sqrt(L.det_gram)
    d = float(exact) if exact is not None else math.sqrt(L.det_gram)
    return L.gram, d


def dual_basis(L: LatticeBasis) -> LatticeBasis:
    """Basis (B')^{-1} of the dual lattice; L must be full rank."""
    if not L.full_rank:
        raise RankDeficient("dual basis is only built for full-rank lattices")
    # row-major B' is exactly the tuple of columns of B
    return LatticeBasis.from_rows(linalg.inverse(L.columns))


def gram_schmidt(L: LatticeBasis) -> list[list[Fraction]]:
    """Exact Gram-Schmidt vectors of the ordered basis (no normalisation)."""
    out: list[list[Fraction]] = []
    norms: list[Fraction] = []
    for col in L.columns:
        v = list(col)
        for b, nb in zip(out, norms):
            mu = linalg.dot(col, b) / nb
            v = [x - mu * y for x, y in zip(v, b)]
        out.append(v)
        norms.append(linalg.dot(v, v))
    return out


def gs_min_norm_sq(L: LatticeBasis) -> Fraction:
    """min_i |b_i*|^2, exact."""
    return min(linalg.dot(v, v) for v in gram_schmidt(L))


def gs_min_norm(L: LatticeBasis) -> float:
    return _sqrt_exact(gs_min_norm_sq(L))


def _sqrt_exact(q: Fraction) -> float:
    r = linalg.rational_sqrt(q)
    if r is not None:
        return float(r)
    # sqrt(p/q) = sqrt(p q) / q keeps the rounding to one operation
    return math.sqrt(q.numerator * q.denominator) / q.denominator


def _canonical_key(x: tuple[int, ...]):
    # prefer the sign with positive leading entry, then lexicographic order
    lead = next((v for v in x if v), 0)
    return (lead < 0, x)


def shortest_vector(L: LatticeBasis, radius_hint: float | None = None,
                    budget: int = ENUMERATION_BUDGET) -> tuple[Fraction, tuple[int, ...]]:
    """Exact squared minimum distance and a witness coefficient vector."""
    R = L.cholesky
    col_sq = min(linalg.dot(c, c) for c in L.columns)
    radius2 = float(col_sq)
    if radius_hint is not None and radius_hint * radius_hint < radius2:
        radius2 = radius_hint * radius_hint
    best, witness, visited, status = kernels.shortest_kernel(R, radius2 * (1 + 1e-9), budget)
    if status == kernels.BUDGET:
        raise EnumerationBudgetExceeded(f"shortest-vector enumeration exceeded {budget} nodes")
    if witness is None:
        if radius2 < float(col_sq):
            # hint was below lambda_1: fall back to the always-sufficient column radius
            return shortest_vector(L, None, budget)
        raise AssertionError("enumeration missed the basis vectors themselves")
    # exact re-ranking of every float near-tie
    pts, _, visited, status = kernels.points_kernel(
        R, np.zeros(L.m), best * (1 + 1e-7) + 1e-12, budget, budget)
    if status == kernels.BUDGET:
        raise EnumerationBudgetExceeded("tie re-ranking exceeded the enumeration budget")
    g = L.gram
    best_sq, best_x = None, None
    for x in pts:
        if not any(x):
            continue
        sq = sum((g[i][j] * x[i] * x[j] for i in range(L.m) for j in range(L.m) if x[i] and x[j]),
                 Fraction(0))
        key = (sq, _canonical_key(x))
        if best_sq is None or key < (best_sq, _canonical_key(best_x)):
            best_sq, best_x = sq, x
    return best_sq, best_x


def min_distance(L: LatticeBasis, radius_hint: float | None = None,
                 budget: int = ENUMERATION_BUDGET) -> tuple[float, tuple[int, ...]]:
    """lambda_1(L) by exhaustive enumeration, with a shortest coefficient vector."""
    sq, witness = shortest_vector(L, radius_hint, budget)
    return _sqrt_exact(sq), witness


def eigen_lower_bound(L: LatticeBasis) -> float:
    """sqrt of the smallest eigenvalue of B'B; never exceeds lambda_1."""
    return math.sqrt(max(gram_spectrum(L).eigen_min, 0.0))


def membership(L: LatticeBasis, v: Sequence) -> tuple[bool, list[int] | None]:
    """Whether v is in L; returns the integer coefficient vector when it is."""
    v = [as_rational(x) for x in v]
    if len(v) != L.n:
        raise DimensionMismatch(f"vector of length {len(v)} for lattice in dimension {L.n}")
    x = linalg.solve(L.matrix(), v)
    if x is None or any(c.denominator != 1 for c in x):
        return False, None
    return True, [int(c) for c in x]


def contains(L: LatticeBasis, v: Sequence) -> bool:
    return membership(L, v)[0]


def span_basis(vectors: Sequence[Sequence], n: int | None = None) -> LatticeBasis:
    """Basis of the lattice generated by arbitrary rational vectors (HNF)."""
    vecs = [[as_rational(v) for v in vec] for vec in vectors]
    if not vecs:
        raise RankDeficient("no generators")
    n = n if n is not None else len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise DimensionMismatch("generators have different lengths")
    d = linalg.lcm_denominator(x for v in vecs for x in v)
    rows = linalg.hnf_rows([[int(x * d) for x in v] for v in vecs])
    if not rows:
        raise RankDeficient("all generators are zero")
    return LatticeBasis(tuple(tuple(Fraction(x, d) for x in r) for r in rows))


def hnf_basis(L: LatticeBasis) -> LatticeBasis:
    return span_basis(L.columns)


def lattice_sum(L1: LatticeBasis | Sequence, L2: LatticeBasis | Sequence, *more) -> LatticeBasis:
    """Basis of L1 + L2 (+ ...), via Hermite normal form after clearing denominators.

    Plain column lists are accepted too; irrational entries raise
    :class:`IrrationalInput`, because e.g. Z + sqrt(2) Z is dense, not a lattice.
    """
    vecs = []
    dims = set()
    for L in (L1, L2, *more):
        cols = L.columns if isinstance(L, LatticeBasis) else [tuple(as_rational(v) for v in c) for c in L]
        dims.update(len(c) for c in cols)
        vecs.extend(cols)
    if len(dims) != 1:
        raise DimensionMismatch(f"summands live in different dimensions {sorted(dims)}")
    return span_basis(vecs)


def same_lattice(L1: LatticeBasis, L2: LatticeBasis) -> bool:
    return (L1.n == L2.n and all(contains(L2, c) for c in L1.columns)
            and all(contains(L1, c) for c in L2.columns))


def quotient_index(L: LatticeBasis, N: LatticeBasis) -> int:
    """|L / N| = d(N) / d(L) for a sublattice N of equal rank."""
    if L.n != N.n:
        raise DimensionMismatch("lattices live in different dimensions")
    if L.m != N.m:
        raise NotSublattice(f"rank mismatch: rank(L) = {L.m}, rank(N) = {N.m}")
    for c in N.columns:
        if not contains(L, c):
            raise NotSublattice(f"basis vector {[rational_str(v) for v in c]} of N is not in L")
    ratio = N.det_gram / L.det_gram
    index = linalg.rational_sqrt(ratio)
    if index is None or index.denominator != 1:
        raise AssertionError(f"d(N)/d(L) = sqrt({ratio}) is not an integer")
    return int(index)
