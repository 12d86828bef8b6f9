"""Self-contained replay of the worked examples and reduced property suites.

Used by ``philattice verify``.  Every check returns ``(name, ok, detail)``;
random inputs come from seeded generators so runs are reproducible.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import linalg
from .cyclic import is_cyclic, is_prime_spot, minimal_cyclic_lattice, module_to_lattice
from .errors import NotCoprime
from .idealmat import (
    conv_product,
    evaluate_at_roots,
    gram_eigenvalues,
    ideal_det,
    ideal_eigenvalues,
    ideal_matrix,
    ideal_matrix_poly_form,
)
from .lattice import (
    LatticeBasis,
    dual_basis,
    eigen_lower_bound,
    gs_min_norm,
    min_distance,
    quotient_index,
)
from .polyring import Poly, QuotientContext, inverse_mod_phi, ring_mul
from .smoothing import bound_gs, bound_lambda, bound_tg, eta_numeric, statistical_distance_check

Check = tuple[str, bool, str]


# ---- seeded input generators (shared with the test-suite) -----------------

def random_rational(rng: random.Random, bound: int = 5, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, max_den))


def random_element(ctx: QuotientContext, rng: random.Random, integral: bool = False, bound: int = 5):
    if integral:
        return ctx.element([rng.randint(-bound, bound) for _ in range(ctx.n)])
    return ctx.element([random_rational(rng, bound) for _ in range(ctx.n)])


def random_prime_spot(ctx: QuotientContext, rng: random.Random, bound: int = 3):
    while True:
        g = random_element(ctx, rng, integral=True, bound=bound)
        if g.rep.is_zero():
            continue
        try:
            inverse_mod_phi(g)
        except NotCoprime:
            continue
        return g


def random_basis(rng: random.Random, n: int, bound: int = 5, rational: bool = True) -> LatticeBasis:
    while True:
        cols = [[random_rational(rng, bound, 3) if rational else rng.randint(-bound, bound)
                 for _ in range(n)] for _ in range(n)]
        if linalg.det(linalg.transpose(cols)) != 0:
            return LatticeBasis.from_columns(cols)


def random_cyclic_instance(rng: random.Random, n: int):
    """Integer x^n - 1 cyclic lattice with a prime spot inside it."""
    ctx = QuotientContext.x_n_minus(n)
    gens = [random_prime_spot(ctx, rng)]
    for _ in range(rng.randint(0, 1)):
        gens.append(random_element(ctx, rng, integral=True, bound=3))
    L = module_to_lattice(gens)
    while True:
        coeffs = [rng.randint(-1, 1) for _ in range(L.basis.m)]
        if not any(coeffs):
            continue
        g = ctx.element(L.basis.vector(coeffs))
        try:
            inverse_mod_phi(g)
        except NotCoprime:
            continue
        return L, g


# ---- checks ---------------------------------------------------------------

def example_cubic() -> Iterator[Check]:
    ctx = QuotientContext.x_n_minus(3)
    L = LatticeBasis.from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    g = ctx.element([0, 0, 1])
    cert = is_prime_spot(g)
    yield "x^3-1 example: u(x) = x", cert.u.rep == Poly([0, 1]), str(cert.u.rep)
    yield "x^3-1 example: T_g(x) = x^2", cert.tg.rep == Poly([0, 0, 1]), str(cert.tg.rep)
    yield "x^3-1 example: |T_g(theta_i)| = 1", all(abs(v - 1) < 1e-9 for v in cert.tg_values), str(cert.tg_values)
    b0 = gs_min_norm(dual_basis(L))
    yield "x^3-1 example: |B0*| = sqrt(3)/3", abs(b0 - math.sqrt(3) / 3) < 1e-9, repr(b0)
    tg, _ = bound_tg(L, g)
    gs = bound_gs(L)
    yield "x^3-1 example: bound_tg = sqrt(3)", abs(tg - math.sqrt(3)) < 1e-9, repr(tg)
    yield "x^3-1 example: bound_gs = 3", abs(gs - 3) < 1e-9, repr(gs)
    yield "x^3-1 example: bound_tg <= bound_gs", tg <= gs, f"{tg} <= {gs}"


def example_quartic() -> Iterator[Check]:
    ctx = QuotientContext.x_n_minus(4)
    L = LatticeBasis.from_rows([[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]])
    g = ctx.element([-2, 1, 0, 0])
    cert = is_prime_spot(g)
    yield "x^4-1 example: u*g = 1", ring_mul(cert.u, g) == ctx.one(), str(cert.u.rep)
    shifted = ctx.element(ctx.shift(list(reversed(cert.u.vector))))
    yield "x^4-1 example: T_g = H u_bar", cert.tg == shifted, str(cert.tg.rep)
    candidate = ctx.element([Fraction(-5, 7), Fraction(-2, 7), Fraction(-1, 7), Fraction(1, 7)])
    yield ("x^4-1 example: candidate inverse (x^3-x^2-2x-5)/7 is rejected",
           ring_mul(candidate, g) != ctx.one(), str(ring_mul(candidate, g).rep))
    b0 = gs_min_norm(dual_basis(L))
    yield "x^4-1 example: |B0*| = 1/2", abs(b0 - 0.5) < 1e-9, repr(b0)
    yield "x^4-1 example: bound_gs = 4", abs(bound_gs(L) - 4) < 1e-9, repr(bound_gs(L))
    tg, _ = bound_tg(L, g)
    yield "x^4-1 example: bound_tg = sqrt(4)/min|T_g| = 6", abs(tg - 6) < 1e-9, repr(tg)
    eta = eta_numeric(L)
    yield "x^4-1 example: eta <= bound_lambda <= bound_tg", eta <= bound_lambda(L) <= tg + 1e-9, repr(eta)


def ideal_identities(count: int, seed: int) -> Iterator[Check]:
    rng = random.Random(seed)
    bad = []
    for t in range(count):
        n = rng.choice([2, 3, 4, 8])
        ctx = QuotientContext.x_n_minus(n) if t % 2 else QuotientContext(Poly([-1, -1] + [0] * (n - 2) + [1]))
        f, g = random_element(ctx, rng), random_element(ctx, rng)
        hf, hg = ideal_matrix(f), ideal_matrix(g)
        if hf != ideal_matrix_poly_form(f):
            bad.append(f"(i) {f}")
        if hf @ hg != ideal_matrix(conv_product(f, g)).rows() or hf @ hg != hg @ hf:
            bad.append(f"(ii) {f}, {g}")
        ex, spectral = ideal_det(f)
        if abs(float(ex) - spectral) > 1e-6 * max(1.0, abs(float(ex))):
            bad.append(f"(iv) {f}")
    yield f"ideal-matrix identities on {count} pairs", not bad, "; ".join(bad[:3])


def gram_spectra(count: int, seed: int) -> Iterator[Check]:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(count):
        ctx = QuotientContext.x_n_minus(rng.choice([3, 4, 6]))
        g = random_prime_spot(ctx, rng)
        eig = np.sort(gram_eigenvalues(g))
        expect = np.sort([abs(v) ** 2 for v in evaluate_at_roots(g)])
        worst = max(worst, float(np.max(np.abs(eig - expect) / np.maximum(1, expect))))
    yield f"Gram spectra vs |g(theta)|^2 on {count} prime spots", worst < 1e-6, f"max rel err {worst:.2e}"


def bound_validity(count: int, seed: int) -> Iterator[Check]:
    rng = random.Random(seed)
    bad, sharper = [], 0
    for _ in range(count):
        L, g = random_cyclic_instance(rng, rng.choice([2, 3, 4]))
        eta = eta_numeric(L.basis)
        tg, _ = bound_tg(L, g)
        lam, gs = bound_lambda(L.basis), bound_gs(L.basis)
        if eta > min(lam, tg, gs) + 1e-6 or lam > tg + 1e-6:
            bad.append(f"eta={eta} lam={lam} tg={tg} gs={gs}")
        sharper += tg <= gs
    yield f"eta <= min bounds on {count} cyclic lattices", not bad, "; ".join(bad[:3])
    yield "T_g bound sharper than GS bound (recorded, not required)", True, f"{sharper}/{count}"


def lattice_oracles(count: int, seed: int) -> Iterator[Check]:
    rng = random.Random(seed)
    bad = []
    for _ in range(count):
        L = random_basis(rng, rng.choice([2, 3]))
        lam, _ = min_distance(L)
        if eigen_lower_bound(L) > lam + 1e-9:
            bad.append("eigen bound")
        k = rng.randint(2, 3)
        if quotient_index(L, L.scaled(k)) != k ** L.n:
            bad.append("index")
    yield f"lattice backbone on {count} bases", not bad, "; ".join(bad[:3])


def cyclicity(count: int, seed: int) -> Iterator[Check]:
    rng = random.Random(seed)
    ok = True
    for _ in range(count):
        ctx = QuotientContext.x_n_minus(rng.randint(2, 4))
        gens = [random_element(ctx, rng, integral=True, bound=3) for _ in range(rng.randint(1, 3))]
        if all(g.rep.is_zero() for g in gens):
            continue
        ok &= is_cyclic(module_to_lattice(gens).basis, ctx)
    ctx2 = QuotientContext.x_n_minus(2)
    counter = LatticeBasis.from_columns([[1, 0], [0, 2]])
    yield f"module lattices are cyclic ({count})", bool(ok), ""
    yield "diag(1,2) is not x^2-1 cyclic", not is_cyclic(counter, ctx2), ""
    g = ctx2.element([1, 1])
    yield "minimal lattice of non-prime-spot is rank 1", minimal_cyclic_lattice(g).rank == 1, ""


def folded_density() -> Iterator[Check]:
    Z = LatticeBasis.from_columns([[1]])
    s = eta_numeric(Z, 0.5)
    delta, ok = statistical_distance_check(Z, s, 10**4, 0)
    yield "folded Gaussian at eta_{1/2}(Z) within 1/4 of uniform", ok and delta <= 0.25 + 1e-3, f"{delta:.6f}"


def all_checks(quick: bool = True) -> list[Callable[[], Iterator[Check]]]:
    scale = 1 if quick else 5
    return [
        example_cubic,
        example_quartic,
        lambda: ideal_identities(100 * scale, 1),
        lambda: gram_spectra(20 * scale, 2),
        lambda: bound_validity(20 * scale, 3),
        lambda: lattice_oracles(40 * scale, 4),
        lambda: cyclicity(20 * scale, 5),
        folded_density,
    ]


def run(quick: bool = True) -> list[Check]:
    results = []
    for check in all_checks(quick):
        results.extend(check())
    return results
