"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line (visible even under captured
output) before asserting.  The x^4-1 worked-example test checks the values
exactly as originally stated; those values do not satisfy
u*g = 1 mod phi, so that test is expected to fail for any correct
implementation (see test_polyring / test_cyclic for the verified values).
"""

import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from philattice import (
    LatticeBasis,
    QuotientContext,
    bound_gs,
    bound_lambda,
    bound_tg,
    conv_product,
    dual_basis,
    eta_numeric,
    ideal_det,
    ideal_matrix,
    is_cyclic,
    is_prime_spot,
    min_distance,
    module_to_lattice,
    quotient_index,
    statistical_distance_check,
)
from philattice.idealmat import evaluate_at_roots, gram_eigenvalues, ideal_eigenvalues, ideal_matrix_poly_form
from philattice.lattice import eigen_lower_bound, gs_min_norm, shortest_vector
from philattice.polyring import Poly
from philattice.verify import random_basis, random_cyclic_instance, random_element, random_prime_spot


@pytest.fixture
def report(capsys):
    def _report(label, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f" :: {detail}" if detail else ""))
        assert ok, f"{label}: {detail}"
    return _report


def _close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def _paired_error(a, b):
    """Max relative error after greedy nearest pairing of two complex spectra."""
    b = list(b)
    worst = 0.0
    for z in sorted(a, key=lambda z: (round(z.real, 6), round(z.imag, 6))):
        j = min(range(len(b)), key=lambda k: abs(b[k] - z))
        worst = max(worst, abs(b[j] - z) / max(1.0, abs(z)))
        b.pop(j)
    return worst


def test_ac1_cube_example(report):
    t0 = time.perf_counter()
    ctx = QuotientContext.x_n_minus(3)
    L = LatticeBasis.from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    g = ctx.element([0, 0, 1])
    cert = is_prime_spot(g)
    b0 = gs_min_norm(dual_basis(L))
    tg, _ = bound_tg(L, g)
    gs = bound_gs(L)
    elapsed = time.perf_counter() - t0
    checks = {
        "u = x": cert.u.rep == Poly([0, 1]),
        "T_g = x^2": cert.tg.rep == Poly([0, 0, 1]),
        "|T_g(theta)| = 1": all(_close(v, 1) for v in cert.tg_values),
        "|B0*| = sqrt3/3": _close(b0, math.sqrt(3) / 3),
        "bound_tg = sqrt3": _close(tg, math.sqrt(3)),
        "bound_gs = 3": _close(gs, 3),
        "tg <= gs": tg <= gs,
        "runtime < 1s": elapsed < 1,
    }
    bad = [k for k, v in checks.items() if not v]
    report("AC1 x^3-1 worked example", not bad, f"failed: {bad}" if bad else f"{elapsed:.3f}s")


def test_ac2_quartic_example_stated_values(report):
    t0 = time.perf_counter()
    ctx = QuotientContext.x_n_minus(4)
    L = LatticeBasis.from_rows([[1, 1, 1, 1], [0, 1, 1, 1], [0, 0, 1, 1], [0, 0, 0, 1]])
    g = ctx.element([-2, 1, 0, 0])
    cert = is_prime_spot(g)
    tg, _ = bound_tg(L, g)
    gs = bound_gs(L)
    elapsed = time.perf_counter() - t0
    F = Fraction
    expected_u = Poly([F(-5, 7), F(-2, 7), F(-1, 7), F(1, 7)])
    expected_tg = Poly([F(-5, 7), F(1, 7), F(-1, 7), F(-2, 7)])
    expected_abs = sorted([1, 5 / 7, 5 / 7, 5 / 7])
    checks = {
        "u": cert.u.rep == expected_u,
        "T_g": cert.tg.rep == expected_tg,
        "|T_g| values": all(_close(a, b) for a, b in zip(sorted(cert.tg_values), expected_abs)),
        "bound_tg = 2.8": _close(tg, 2.8),
        "bound_gs = 4": _close(gs, 4),
        "runtime < 1s": elapsed < 1,
    }
    bad = [k for k, v in checks.items() if not v]
    detail = (f"failed: {bad}; computed u = {cert.u.rep}, T_g = {cert.tg.rep}, "
              f"|T_g| = {[round(v, 6) for v in cert.tg_values]}, bound_tg = {tg}") if bad else f"{elapsed:.3f}s"
    report("AC2 x^4-1 worked example (stated values)", not bad, detail)


def test_ac3_ideal_matrix_identities(report):
    t0 = time.perf_counter()
    rng = random.Random(20261019)
    bad = []
    for t in range(500):
        n = (2, 3, 4, 8)[t % 4]
        ctx = QuotientContext.x_n_minus(n) if (t // 4) % 2 == 0 else \
            QuotientContext(Poly([-1, -1] + [0] * (n - 2) + [1]))
        f, g = random_element(ctx, rng), random_element(ctx, rng)
        a, b = Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        hf, hg = ideal_matrix(f), ideal_matrix(g)
        if hf.entries != ideal_matrix_poly_form(f).entries:
            bad.append(("poly form", n))
        prod = hf @ hg
        if prod != ideal_matrix(conv_product(f, g)).rows() or prod != hg @ hf:
            bad.append(("product", n))
        lin = ideal_matrix(f * a + g * b).rows()
        if lin != [[a * x + b * y for x, y in zip(rf, rg)] for rf, rg in zip(hf.rows(), hg.rows())]:
            bad.append(("linearity", n))
        if (hf.entries == hg.entries) != (f == g) or ideal_matrix(f).entries != hf.entries:
            bad.append(("injective", n))
        roots_f = evaluate_at_roots(f)
        if _paired_error(ideal_eigenvalues(f), roots_f) > 1e-6:
            bad.append(("eigenvalues", n))
        exact, spectral = ideal_det(f)
        prod_roots = np.prod(roots_f)
        if abs(float(exact) - spectral) > 1e-6 * max(1.0, abs(float(exact))) or \
                abs(prod_roots - float(exact)) > 1e-6 * max(1.0, abs(float(exact))):
            bad.append(("determinant", n))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    report("AC3 ideal-matrix identities on 500 pairs", ok, f"{elapsed:.2f}s, failures {bad[:5]}")


def test_ac4_gram_spectra(report):
    rng = random.Random(4)
    worst = 0.0
    for t in range(100):
        ctx = QuotientContext.x_n_minus((3, 4, 6)[t % 3])
        g = random_prime_spot(ctx, rng, bound=4)
        eig = np.sort(gram_eigenvalues(g))
        expect = np.sort([abs(v) ** 2 for v in evaluate_at_roots(g)])
        worst = max(worst, float(np.max(np.abs(eig - expect) / np.maximum(1.0, expect))))
    report("AC4 Gram spectra equal |g(theta_i)|^2 on 100 prime spots", worst <= 1e-6, f"max rel err {worst:.2e}")


def test_ac5_bound_validity(report):
    rng = random.Random(5)
    bad, sharper = [], 0
    for t in range(100):
        n = 2 + t % 3
        L, g = random_cyclic_instance(rng, n)
        eta = eta_numeric(L.basis, 2.0 ** -n)
        tg, _ = bound_tg(L, g)
        lam, gs = bound_lambda(L.basis), bound_gs(L.basis)
        if eta > min(lam, tg, gs) + 1e-6:
            bad.append((n, eta, lam, tg, gs))
        sharper += tg <= gs
    report("AC5 eta <= min(bound_lambda, bound_tg, bound_gs) on 100 cyclic lattices", not bad,
           f"bound_tg <= bound_gs on {sharper}/100 instances (recorded only); violations {bad[:3]}")


def test_ac6_scaling_monotonicity(report):
    rng = random.Random(6)
    bad = []
    for t in range(50):
        n = 1 + t % 3
        L = random_basis(rng, n, bound=3)
        for eps in (2.0 ** -n, 0.1):
            base = eta_numeric(L, eps)
            for k in (2, 3):
                scaled = eta_numeric(L.scaled(k), eps)
                if base > scaled + 1e-6:
                    bad.append((n, eps, k, base, scaled))
    report("AC6 eta(L) <= eta(kL) on 50 lattices", not bad, f"violations {bad[:3]}")


def test_ac7_folded_density(report):
    t0 = time.perf_counter()
    Z = LatticeBasis.from_columns([[1]])
    s = eta_numeric(Z, 0.5)
    delta, _ = statistical_distance_check(Z, s, trials=10**4, seed=0)
    elapsed = time.perf_counter() - t0
    report("AC7 folded Gaussian at eta_1/2(Z) within 1/4 of uniform", delta <= 0.25 + 1e-3 and elapsed < 5,
           f"s = {s:.7f}, TV = {delta:.6f}, {elapsed:.2f}s")


def _brute_force_min(L, box=5):
    B = L.to_float()
    axis = np.arange(-box, box + 1, dtype=float)
    grid = np.stack(np.meshgrid(*[axis] * L.n, indexing="ij"), axis=-1).reshape(-1, L.n)
    grid = grid[np.any(grid != 0, axis=1)]
    return float(np.min(np.sum((grid @ B.T) ** 2, axis=1)))


def _certified_box(L, r2):
    """Coefficient box that provably holds every lattice vector of norm^2 <= r2."""
    rows = np.linalg.inv(L.to_float())
    return int(math.ceil(math.sqrt(r2) * np.linalg.norm(rows, axis=1).max() + 1e-9))


def test_ac8_lattice_backbone(report):
    # the +-5 brute force is exact only when the box provably contains the
    # minimum; otherwise its value is an upper bound and a wider certified box
    # is searched instead
    rng = random.Random(8)
    bad, widened = [], 0
    for t in range(200):
        L = random_basis(rng, 2 + t % 2)
        sq, _ = shortest_vector(L)
        lam, _ = min_distance(L)
        brute = _brute_force_min(L)
        box = _certified_box(L, brute)
        if box > 5:
            widened += 1
            if float(sq) > brute + 1e-9:
                bad.append(("above box minimum", float(sq), brute))
            brute = _brute_force_min(L, box)
        if abs(float(sq) - brute) > 1e-9 * max(1.0, brute) or abs(lam * lam - brute) > 1e-9 * max(1.0, brute):
            bad.append(("min_distance", float(sq), brute))
        if eigen_lower_bound(L) > lam + 1e-12:
            bad.append(("eigen bound", eigen_lower_bound(L), lam))
    for t in range(100):
        L = random_basis(rng, 2 + t % 2)
        M = [[rng.randint(-3, 3) for _ in range(L.n)] for _ in range(L.n)]
        while np.linalg.matrix_rank(np.array(M)) < L.n:
            M = [[rng.randint(-3, 3) for _ in range(L.n)] for _ in range(L.n)]
        N = LatticeBasis.from_columns([L.vector(col) for col in M])
        index = quotient_index(L, N)
        if not isinstance(index, int) or index != abs(round(np.linalg.det(np.array(M, dtype=float)))):
            bad.append(("index", index))
    report("AC8 min_distance vs brute force, eigen bound, integral quotient index", not bad,
           f"{widened}/200 bases needed a certified box wider than +-5; failures {bad[:3]}")


def test_ac9_cyclicity(report):
    rng = random.Random(9)
    failures = 0
    done = 0
    while done < 100:
        ctx = QuotientContext.x_n_minus(rng.randint(1, 4))
        gens = [random_element(ctx, rng, integral=True, bound=3) for _ in range(rng.randint(1, 3))]
        if all(g.rep.is_zero() for g in gens):
            continue
        failures += not is_cyclic(module_to_lattice(gens).basis, ctx)
        done += 1
    counter = LatticeBasis.from_columns([[1, 0], [0, 2]])
    rejected = not is_cyclic(counter, QuotientContext.x_n_minus(2))
    report("AC9 module lattices cyclic, Z(1,0)+Z(0,2) not x^2-1 cyclic", failures == 0 and rejected,
           f"{failures} non-cyclic module lattices, counterexample rejected = {rejected}")
