"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--max-n 10] [--repeat 5]

Both implementations are imported side by side from ``zdkit._kernels``, so
the ``ZDKIT_DISABLE_JIT`` flag does not matter here.  Outputs are compared
before timing; a mismatch aborts the run.
"""

import argparse
import timeit

import numpy as np

from zdkit import _kernels as k
from zdkit.algebra import trip_array


def _cases(n, rng):
    size = 1 << n
    trips = trip_array(n)
    sign = k.sign_table_numpy(trips, size)
    x = rng.integers(-3, 4, size).astype(np.int64)
    y = rng.integers(-3, 4, size).astype(np.int64)
    s = 1
    xs = (size >> 1) ^ s
    ls = np.array([l for l in range(1, size >> 1) if l != s], dtype=np.int64)
    return {
        "sign_table": ((trips, size), k.sign_table_numpy, k.sign_table_jit),
        "dense_mul": ((x, y, sign), k.dense_mul_numpy, k.dense_mul_jit),
        "zd_masks": ((ls, xs, sign), k.zd_masks_numpy, k.zd_masks_jit),
    }


def best_of(fn, args, repeat):
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05 and number < 1 << 16:
        number *= 4
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not k.HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1
    rng = np.random.default_rng(0)
    print(f"{'kernel':<12} {'N':>3} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>8}")
    for n in range(args.min_n, args.max_n + 1):
        for name, (fargs, slow, fast) in _cases(n, rng).items():
            a, b = slow(*fargs), fast(*fargs)  # also compiles the jit version
            if not np.array_equal(a, b):
                raise SystemExit(f"{name} disagrees at N={n}")
            t_np = best_of(slow, fargs, args.repeat)
            t_nb = best_of(fast, fargs, args.repeat)
            print(f"{name:<12} {n:>3} {t_np:>12.3e} {t_nb:>12.3e} {t_np / t_nb:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
