"""Timing comparison of the compiled and pure-Python integrand kernels.

Runs the hot Bessel-product integrand over batches of the sizes the
adaptive quadrature actually uses and prints per-call times for both
backends plus the speedup. Usage: python3 benchmarks/bench_backends.py
"""

import time

import numpy as np

from strichcert import _kernels_py

try:
    from strichcert import _kernels

    HAVE_COMPILED = True
except ImportError:
    _kernels = None
    HAVE_COMPILED = False


def bench(fn, d, k, r, repeats):
    fn(d, k, r)  # warm up
    t0 = time.perf_counter()
    for _ in range(repeats):
        fn(d, k, r)
    return (time.perf_counter() - t0) / repeats


def main():
    rng = np.random.default_rng(0)
    cases = [(3, 2, 960), (6, 3, 960), (60, 3, 4096), (3, 7, 15)]
    repeats = 200
    print(f"{'case':>18} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for d, k, n in cases:
        r = np.sort(rng.uniform(0.0, 2000.0, n))
        tp = bench(_kernels_py.ck_integrand_many, d, k, r, repeats)
        row = f"d={d:<3} k={k} n={n:<5}"
        if HAVE_COMPILED:
            tc = bench(_kernels.ck_integrand_many, d, k, r, repeats)
            a = _kernels_py.ck_integrand_many(d, k, r)
            b = _kernels.ck_integrand_many(d, k, r)
            dev = float(np.max(np.abs(a - b)))
            print(
                f"{row:>18} {tp * 1e3:>10.3f}ms {tc * 1e3:>10.3f}ms"
                f" {tp / tc:>8.2f}x  (max dev {dev:.2e})"
            )
        else:
            print(f"{row:>18} {tp * 1e3:>10.3f}ms {'n/a':>12} {'n/a':>9}")
    if not HAVE_COMPILED:
        print("compiled backend unavailable; showing pure-Python timings only")


if __name__ == "__main__":
    main()
