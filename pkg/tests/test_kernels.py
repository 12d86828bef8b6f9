import itertools
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from philattice import kernels
from philattice.lattice import LatticeBasis, min_distance
from philattice.smoothing import eta_numeric, gauss_sum

BASES = [
    np.array([[1.0]]),
    np.array([[2.0, 1.0], [0.0, 1.5]]),
    np.array([[1.0, 0.5, -0.3], [0.0, 1.2, 0.4], [0.0, 0.0, 0.9]]),
]


def _brute_sum(R, y, radius2, alpha, skip_zero):
    n = R.shape[0]
    box = int(math.ceil(math.sqrt(radius2) * np.abs(np.linalg.inv(R)).sum(axis=1).max())) + 2
    total = 0.0
    for x in itertools.product(range(-box, box + 1), repeat=n):
        if skip_zero and not any(x):
            continue
        v = R @ (np.array(x, dtype=float) - y)
        d2 = float(v @ v)
        if d2 <= radius2:
            total += math.exp(-alpha * d2)
    return total


def test_fallback_listed():
    assert "python" in kernels.available_backends()


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


@pytest.mark.parametrize("R", BASES, ids=lambda R: f"n{R.shape[0]}")
@pytest.mark.parametrize("skip_zero", [False, True])
def test_gauss_sum_kernel_matches_brute_force(backend, R, skip_zero):
    y = np.zeros(R.shape[0]) + 0.25
    total, visited, status = kernels.gauss_sum_kernel(R, y, 9.0, 0.7, skip_zero, math.inf, 10 ** 6)
    assert status == kernels.OK
    assert total == pytest.approx(_brute_sum(R, y, 9.0, 0.7, skip_zero), rel=1e-12)


@pytest.mark.parametrize("R", BASES, ids=lambda R: f"n{R.shape[0]}")
def test_points_kernel_finds_every_point(backend, R):
    y = np.zeros(R.shape[0])
    pts, dists, _, status = kernels.points_kernel(R, y, 6.0, 10 ** 6, 10 ** 6)
    assert status == kernels.OK
    for p, d in zip(pts, dists):
        v = R @ np.array(p, dtype=float)
        assert float(v @ v) == pytest.approx(d) and d <= 6.0
    expected = sum(1 for x in itertools.product(range(-12, 13), repeat=R.shape[0])
                   if float((R @ np.array(x, float)) @ (R @ np.array(x, float))) <= 6.0)
    assert len(set(pts)) == len(pts) == expected


def test_budget_and_early_stop(backend):
    R = np.eye(2)
    _, visited, status = kernels.gauss_sum_kernel(R, np.zeros(2), 1e4, 1e-3, False, math.inf, 100)
    assert status == kernels.BUDGET and visited >= 100
    total, _, status = kernels.gauss_sum_kernel(R, np.zeros(2), 1e4, 1e-3, False, 5.0, 10 ** 7)
    assert status == kernels.STOPPED and total > 5.0


def test_shortest_kernel(backend):
    R = np.linalg.cholesky(np.array([[4.0, 2.0], [2.0, 2.0]])).T
    best, witness, _, status = kernels.shortest_kernel(R, 4.0, 10 ** 6)
    assert status == kernels.OK
    assert best == pytest.approx(2.0)
    assert sorted(map(abs, witness)) == [0, 1]


@pytest.mark.skipif("cython" not in kernels.available_backends(), reason="compiled kernel not built")
def test_backends_agree_bitwise():
    R = BASES[2]
    y = np.array([0.1, -0.2, 0.3])
    results = {}
    for name in ("cython", "python"):
        prev = kernels.set_backend(name)
        try:
            results[name] = (
                kernels.gauss_sum_kernel(R, y, 16.0, 0.5, False, math.inf, 10 ** 6),
                kernels.points_kernel(R, y, 5.0, 10 ** 6, 10 ** 6),
                kernels.shortest_kernel(R, 3.0, 10 ** 6),
            )
        finally:
            kernels.set_backend(prev)
    assert results["cython"] == results["python"]


def test_high_level_results_independent_of_backend():
    L = LatticeBasis.from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
    seen = set()
    for name in kernels.available_backends():
        prev = kernels.set_backend(name)
        try:
            seen.add((eta_numeric(L), gauss_sum(L, 1.3), min_distance(L)))
        finally:
            kernels.set_backend(prev)
    assert len(seen) == 1


def test_environment_forces_fallback():
    env = dict(os.environ, PHILATTICE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import philattice; print(philattice.get_backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
