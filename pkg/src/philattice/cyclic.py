"""phi-cyclic lattices: lattices closed under the rotation matrix H."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import DimensionMismatch, NotCoprime, NotPrimeSpot
from .idealmat import conjugate, ideal_matrix
from .lattice import LatticeBasis, contains, span_basis
from .polyring import QuotientContext, RingElement, inverse_mod_phi, rational_str


@dataclass(frozen=True)
class PrimeSpotCertificate:
    """Proof that g(x) is a unit mod phi, with the dual generator T_g = H u_bar."""

    g: RingElement
    u: RingElement
    tg: RingElement
    tg_values: tuple[float, ...]

    @property
    def tg_min(self) -> float:
        return min(self.tg_values)

    def to_json(self) -> dict:
        return {
            "phi": self.g.ctx.phi.to_strings(),
            "g": [rational_str(v) for v in self.g.vector],
            "u": [rational_str(v) for v in self.u.vector],
            "Tg": [rational_str(v) for v in self.tg.vector],
            "tg_values": list(self.tg_values),
            "tg_min": self.tg_min,
        }


@dataclass(frozen=True)
class CyclicLattice:
    basis: LatticeBasis
    ctx: QuotientContext
    generators: tuple[RingElement, ...]

    @property
    def is_ideal_lattice(self) -> bool:
        return all(g.is_integral() for g in self.generators)

    @property
    def rank(self) -> int:
        return self.basis.m


def t_g(u: RingElement) -> RingElement:
    """T_g = H u_bar for the inverse u of g."""
    return u.ctx.element(u.ctx.shift(list(conjugate(u).vector)))


def is_prime_spot(g: RingElement) -> PrimeSpotCertificate:
    """Certificate for a prime spot g; raises :class:`NotPrimeSpot` with the gcd otherwise."""
    try:
        u = inverse_mod_phi(g)
    except NotCoprime as exc:
        raise NotPrimeSpot(f"g(x) = {g.rep} is not a prime spot: {exc}", gcd=exc.gcd) from None
    tg = t_g(u)
    values = tuple(abs(tg.rep.evalc(w)) for w in g.ctx.roots)
    return PrimeSpotCertificate(g, u, tg, values)


def minimal_cyclic_lattice(g: RingElement) -> CyclicLattice:
    """L(H*(g)), the smallest phi-cyclic lattice containing g."""
    if g.rep.is_zero():
        raise ValueError("the zero vector generates no lattice")
    m = ideal_matrix(g)
    if linalg.det(m.entries) != 0:
        basis = LatticeBasis.from_rows(m.entries)
    else:
        basis = span_basis(m.columns())
    return CyclicLattice(basis, g.ctx, (g,))


def module_to_lattice(generators: Sequence[RingElement]) -> CyclicLattice:
    """Lattice of the R-module generated by ``generators``: sum of their L(H*(a_i))."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    ctx = gens[0].ctx
    nonzero = [g for g in gens if not g.rep.is_zero()]
    if not nonzero:
        raise ValueError("all generators are zero")
    cols = [c for g in nonzero for c in ideal_matrix(g).columns()]
    basis = span_basis(cols, ctx.n)
    for c in cols:
        if not contains(basis, c):
            raise AssertionError("module lattice does not contain a generator column")
    return CyclicLattice(basis, ctx, gens)


def is_cyclic(L: LatticeBasis, ctx: QuotientContext) -> bool:
    """Whether H maps every basis vector (hence the whole lattice) back into L."""
    if L.n != ctx.n:
        raise DimensionMismatch(f"lattice dimension {L.n} vs phi degree {ctx.n}")
    return all(contains(L, ctx.shift(list(c))) for c in L.columns)


def product_inclusion_check(betas: Sequence[RingElement]) -> bool:
    """L(H*(b_1) ... H*(b_m)) is contained in every L(H*(b_i))."""
    if len(betas) < 2:
        raise ValueError("need at least two vectors")
    prod = ideal_matrix(betas[0]).rows()
    for b in betas[1:]:
        prod = linalg.matmul(prod, ideal_matrix(b).entries)
    cols = [c for c in zip(*prod) if any(c)]
    if not cols:
        return True
    factors = [minimal_cyclic_lattice(b).basis for b in betas]
    return all(contains(F, c) for F in factors for c in cols)
