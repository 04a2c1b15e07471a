"""Time the numba and numpy Jacobi kernels on random symmetrized Laplacians.

    python benchmarks/bench_jacobi.py [--sizes 9 16 32 64] [--repeat 20]
"""

import argparse
import itertools
import random
import time

import numpy as np

from zukcheck import _kernels
from zukcheck.graph import from_edge_list
from zukcheck.spectral import symmetrized_laplacian


def random_laplacian(n, rng):
    labels = [str(i) for i in range(n)]
    edges = [(labels[i], labels[i + 1]) for i in range(n - 1)]
    edges += [(labels[i], labels[j]) for i, j in itertools.combinations(range(n), 2) if j > i + 1 and rng.random() < 0.3]
    return symmetrized_laplacian(from_edge_list(labels, edges))


def best_of(fn, a, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(a)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[9, 16, 32, 64])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    rng = random.Random(0)
    backends = [("numpy", _kernels.jacobi_numpy)]
    if _kernels.jacobi_numba is not None:
        t0 = time.perf_counter()
        _kernels.jacobi_numba(np.eye(2))
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.3f}s")
        backends.append(("numba", _kernels.jacobi_numba))
    else:
        print("numba unavailable or disabled; timing numpy only")
    print(f"{'n':>4} " + " ".join(f"{name:>12}" for name, _ in backends) + "   speedup   max|diff|")
    for n in args.sizes:
        a = random_laplacian(n, rng)
        row = [best_of(fn, a, args.repeat) for _, fn in backends]
        line = f"{n:>4} " + " ".join(f"{t * 1e3:10.3f}ms" for t in row)
        if len(row) == 2:
            diff = np.max(np.abs(np.sort(_kernels.jacobi_numpy(a)[0]) - np.sort(_kernels.jacobi_numba(a)[0])))
            line += f"   {row[0] / row[1]:7.1f}x   {diff:.1e}"
        print(line)


if __name__ == "__main__":
    main()
