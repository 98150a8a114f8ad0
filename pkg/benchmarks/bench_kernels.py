"""Compare the numba and pure-numpy GF(2) kernels.

    python benchmarks/bench_kernels.py [--sizes 128 512 1024] [--repeat 3]
"""

import argparse
import time

import numpy as np

from altspin.gf2 import _kernels as K


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[128, 512, 1024])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if not K.USE_NUMBA:
        print("numba path disabled (ALTSPIN_PURE_NUMPY set or numba missing); numpy only")
    paths = [False] + ([True] if K.USE_NUMBA else [])
    rng = np.random.default_rng(args.seed)

    # warm up the jit so compile time is not measured
    if K.USE_NUMBA:
        w = K.pack(rng.integers(0, 2, size=(8, 8), dtype=np.uint8))
        K.rref_inplace(w.copy(), 8, use_numba=True)
        K.matmul_packed(w, w, 8, 8, use_numba=True)

    print(f"{'kernel':8} {'n':>6} {'path':6} {'seconds':>10}")
    for n in args.sizes:
        a = K.pack(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
        b = K.pack(rng.integers(0, 2, size=(n, n), dtype=np.uint8))
        results = {}
        for flag in paths:
            name = "numba" if flag else "numpy"
            t = best_of(lambda: K.rref_inplace(a.copy(), n, use_numba=flag), args.repeat)
            print(f"{'rref':8} {n:6d} {name:6} {t:10.4f}")
            t = best_of(lambda: K.matmul_packed(a, b, n, n, use_numba=flag), args.repeat)
            print(f"{'matmul':8} {n:6d} {name:6} {t:10.4f}")
            results[name] = K.matmul_packed(a, b, n, n, use_numba=flag)
        if len(results) == 2:
            assert np.array_equal(results["numba"], results["numpy"])


if __name__ == "__main__":
    main()
