"""Timing comparison of the numpy and numba kernel paths.

Evaluates complex field and density profiles on a large grid for a few
orders and reports per-call wall time plus the numba speedup. Run as:

    python benchmarks/bench_kernels.py [--nx 200000] [--repeats 20]
"""

import argparse
import os
import statistics
import time

import numpy as np

from hermitewave import _kernels


def time_backend(be, xs, orders, repeats):
    os.environ["HERMITEWAVE_BACKEND"] = be
    # warm-up: first numba call pays compilation
    for n in orders:
        _kernels.psi_profile(xs, n, 1.5, 1.0, 0.5, 1.0)
        _kernels.density_profile(xs, n, 1.5, 1.0, 0.5, 1.0)
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        for n in orders:
            _kernels.psi_profile(xs, n, 1.5, 1.0, 0.5, 1.0)
            _kernels.density_profile(xs, n, 1.5, 1.0, 0.5, 1.0)
        samples.append(time.perf_counter() - t0)
    return min(samples), statistics.median(samples)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nx", type=int, default=200_000)
    ap.add_argument("--repeats", type=int, default=20)
    args = ap.parse_args()

    xs = np.linspace(-8.0, 8.0, args.nx)
    orders = (0, 2, 8, 32)
    print(f"grid {args.nx} points, orders {orders}, {args.repeats} repeats")

    results = {}
    for be in ("numpy", "numba") if _kernels.HAVE_NUMBA else ("numpy",):
        best, med = time_backend(be, xs, orders, args.repeats)
        results[be] = best
        print(f"{be:6s}: best {best * 1e3:8.2f} ms  median {med * 1e3:8.2f} ms")
    if "numba" in results:
        print(f"speedup (numpy/numba, best): "
              f"{results['numpy'] / results['numba']:.2f}x")
    os.environ.pop("HERMITEWAVE_BACKEND", None)


if __name__ == "__main__":
    main()
