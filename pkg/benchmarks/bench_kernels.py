"""Time the maximum-directivity grid kernel: numba vs pure numpy.

    python benchmarks/bench_kernels.py [--count 181] [--repeat 5]

Both paths run in the same process regardless of SUPERDIRECTIVE_DISABLE_NUMBA.
"""
import argparse
import time

import numpy as np

from superdirective import ArrayGeometry, coupling_matrix
from superdirective.kernels import gstar_grid


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--count", type=int, default=181)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    angles = np.linspace(0, np.pi, args.count)
    print(f"{'array':>8} {'nodes':>7} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8} {'max rel diff':>13}")
    for rows, cols in [(4, 8), (8, 8), (8, 16)]:
        geom = ArrayGeometry(rows, cols, 0.45, 0.45)
        cm = coupling_matrix(geom)
        call = (cm.chol, rows, cols, geom.dx, geom.dz, angles, angles)
        gstar_grid(*call[:5], angles[:2], angles[:2], use_numba=True)  # compile outside the timing
        t_numpy = best_of(lambda: gstar_grid(*call, use_numba=False), args.repeat)
        t_numba = best_of(lambda: gstar_grid(*call, use_numba=True), args.repeat)
        a = gstar_grid(*call, use_numba=False)
        b = gstar_grid(*call, use_numba=True)
        diff = float(np.max(np.abs(a - b) / a))
        print(f"{f'{rows}x{cols}':>8} {angles.size ** 2:>7} {t_numpy:10.4f} {t_numba:10.4f} {t_numpy / t_numba:8.1f} {diff:13.1e}")


if __name__ == "__main__":
    main()
