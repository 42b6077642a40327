"""Benchmark the compiled Jacobi sweep against the pure-python fallback.

Usage: python3 benchmarks/bench_jacobi.py [--sizes 50,100,200]
"""

import argparse
import time

import numpy as np

from oscbath import _jacobi_py
from oscbath.linalg import OFF_TOL_FACTOR, eigendecompose

try:
    from oscbath import _jacobi_cy
except ImportError:
    _jacobi_cy = None


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return (a + a.conj().T) / 2


def time_backend(kernel, h):
    a = h.copy()
    v = np.eye(h.shape[0], dtype=np.complex128)
    threshold = OFF_TOL_FACTOR * np.linalg.norm(h)

    def off(m):
        return np.linalg.norm(m - np.diag(np.diag(m)))

    start = time.perf_counter()
    sweeps = 0
    while off(a) > threshold and sweeps < 100:
        kernel.sweep(a, v)
        sweeps += 1
    elapsed = time.perf_counter() - start
    return elapsed, sweeps, off(a)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="50,100,200")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'dim':>5}  {'python [s]':>11}  {'cython [s]':>11}  {'speedup':>8}  sweeps")
    for dim in sizes:
        h = random_hermitian(dim, seed=dim)
        t_py, sweeps_py, _ = time_backend(_jacobi_py, h)
        if _jacobi_cy is not None:
            t_cy, sweeps_cy, _ = time_backend(_jacobi_cy, h)
            print(f"{dim:>5}  {t_py:>11.3f}  {t_cy:>11.3f}  "
                  f"{t_py / t_cy:>7.1f}x  {sweeps_py}/{sweeps_cy}")
        else:
            print(f"{dim:>5}  {t_py:>11.3f}  {'n/a':>11}  {'n/a':>8}  {sweeps_py}")

    # sanity: the driver converges with whichever backend is active
    sd = eigendecompose(random_hermitian(sizes[-1], seed=1))
    print(f"driver check: dim {sizes[-1]}, "
          f"eigenvalue range [{sd.eigenvalues[0]:.3f}, {sd.eigenvalues[-1]:.3f}]")


if __name__ == "__main__":
    main()
