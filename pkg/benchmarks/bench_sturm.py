"""Benchmark the Sturm bisection backends.

Runs the full-spectrum bisection on the 1/2-Toeplitz matrix for a few sizes
under the active backend, then re-invokes itself with FUZZYSPHERE_PURE_NUMPY=1
to time the fallback.  Usage: python benchmarks/bench_sturm.py
"""

import os
import subprocess
import sys
import time

import numpy as np


def time_backend(sizes, repeats=3):
    from fuzzysphere import BACKEND
    from fuzzysphere.spectral import TridiagSpec, eig_bisection, toeplitz_spectrum

    print(f"backend: {BACKEND}", flush=True)
    for n in sizes:
        t = TridiagSpec(np.full(n - 1, 0.5))
        eig_bisection(t)                      # warm-up (jit compile)
        best = np.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            spec = eig_bisection(t)
            best = min(best, time.perf_counter() - t0)
        err = np.abs(spec.values - toeplitz_spectrum(n)).max()
        print(f"  n={n:5d}  best of {repeats}: {best * 1e3:8.1f} ms  "
              f"max error {err:.2e}", flush=True)


def main():
    sizes = [201, 501, 1001]
    time_backend(sizes)
    if "FUZZYSPHERE_PURE_NUMPY" not in os.environ:
        env = dict(os.environ, FUZZYSPHERE_PURE_NUMPY="1")
        subprocess.run([sys.executable, __file__], env=env, check=True)


if __name__ == "__main__":
    main()
