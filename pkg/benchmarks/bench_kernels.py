"""Time the compiled enumeration kernel against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload is run on every available backend; results must agree
exactly, and the table reports the best of ``--repeat`` wall-clock times.
"""

import argparse
import math
import time

import numpy as np

from philattice import kernels
from philattice.lattice import LatticeBasis, min_distance
from philattice.smoothing import eta_numeric, gauss_sum


def _upper(n):
    return LatticeBasis.from_rows([[int(j >= i) for j in range(n)] for i in range(n)])


def workloads():
    R4 = _upper(4).cholesky
    R6 = _upper(6).cholesky
    yield "gauss_sum_kernel n=4 r^2=40", lambda: kernels.gauss_sum_kernel(
        R4, np.zeros(4), 40.0, 0.3, False, math.inf, 10 ** 7)
    yield "points_kernel n=6 r^2=12", lambda: kernels.points_kernel(R6, np.zeros(6), 12.0, 10 ** 7, 10 ** 7)
    yield "shortest_kernel n=6", lambda: kernels.shortest_kernel(R6, 6.0, 10 ** 7)
    yield "gauss_sum(upper4, s=2.5)", lambda: gauss_sum(_upper(4), 2.5)
    yield "eta_numeric(upper4)", lambda: eta_numeric(_upper(4))
    yield "min_distance(upper6)", lambda: min_distance(_upper(6))


def best_time(fn, repeat):
    best, result = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    print(f"{'workload':32s}" + "".join(f"{b:>12s}" for b in backends) + ("   speedup" if len(backends) > 1 else ""))
    for name, fn in workloads():
        times, outputs = [], []
        for b in backends:
            prev = kernels.set_backend(b)
            try:
                t, out = best_time(fn, args.repeat)
            finally:
                kernels.set_backend(prev)
            times.append(t)
            outputs.append(out)
        if any(o != outputs[0] for o in outputs[1:]):
            raise SystemExit(f"backends disagree on {name}")
        line = f"{name:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            line += f"   {times[-1] / times[0]:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
