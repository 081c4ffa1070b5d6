"""Time the partition-function kernel on both paths, and a full character computation.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time
from fractions import Fraction as Q

import numpy as np

from relaxkm import kernels
from relaxkm.cartan import cartan_type_a
from relaxkm.characters import Region, _coins, char_relaxed_formula


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cases = []
    for n, depth in ((2, 10), (3, 6), (4, 4)):
        g = cartan_type_a(n)
        coins = _coins(g, 1, depth, include_i=True)
        shape = [2 * depth + 2] * n
        cases.append((f"A{n - 1}^1 depth {depth}", shape, coins))

    print(f"numba available: {kernels.NUMBA_AVAILABLE}")
    print(f"{'case':<18}{'coins':>7}{'cells':>10}{'numpy s':>11}{'numba s':>11}{'speedup':>9}")
    for name, shape, coins in cases:
        kernels.partition_counts(shape, coins, numba=True)  # compile
        t_np, a = best_of(lambda: kernels.partition_counts(shape, coins, numba=False), args.repeat)
        t_nb, b = best_of(lambda: kernels.partition_counts(shape, coins, numba=True), args.repeat)
        assert np.array_equal(a, b)
        print(f"{name:<18}{len(coins):>7}{int(np.prod(shape)):>10}{t_np:>11.4f}{t_nb:>11.4f}{t_np / t_nb:>9.1f}")

    g = cartan_type_a(2)
    lam = g.rho.scale(-2)
    region = Region.box(g, lam + g.simple_root(1).scale(Q(1, 2)), 1, (-6, 6), 8)
    t, ch = best_of(lambda: char_relaxed_formula(g, lam, Q(1, 2), 1, region), args.repeat)
    print(f"relaxed character, affine sl2, depth 8, {len(region.weights)} weights: {t:.4f} s")


if __name__ == "__main__":
    main()
