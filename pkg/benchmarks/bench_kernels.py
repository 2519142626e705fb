"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Times one chi-search level and the certified log-factorial prefix in both
backends and checks that they produce identical results.
"""
import argparse
import time

import numpy as np

from dropclique import kernels
from dropclique._accel import HAS_NUMBA
from dropclique.chi import _edge_plan


def best_of(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def dfs_case(impl, n, r, k, count_all):
    ei, ej, off, subs = _edge_plan(n, k)

    def go():
        out = np.zeros(ei.shape[0], dtype=np.int64)
        res = impl(n, r, ei, ej, off, subs, False, 10**9, np.zeros(0, dtype=np.int64), out, count_all)
        return tuple(int(x) for x in res)

    return go


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAS_NUMBA:
        print("numba not installed; nothing to compare")
        return
    jitted = kernels.chi_avoid_dfs
    pure = jitted.py_func
    rows = []
    for n, r, k, count_all in [(6, 2, 4, True), (6, 4, 3, True), (9, 2, 5, False), (7, 3, 4, False)]:
        dfs_case(jitted, 3, 2, 3, False)()  # compile outside the timing
        tj, rj = best_of(dfs_case(jitted, n, r, k, count_all), args.repeat)
        tp, rp = best_of(dfs_case(pure, n, r, k, count_all), args.repeat)
        assert rj == rp, (rj, rp)
        rows.append((f"chi dfs n={n} r={r} k={k} nodes={rj[1]}", tj, tp))
    for N in (10**4, 10**6):
        kernels.log_factorial_prefix(10, True)
        tj, (a, _) = best_of(lambda: kernels.log_factorial_prefix(N, True), args.repeat)
        tp, (b, _) = best_of(lambda: kernels.log_factorial_prefix(N, False), args.repeat)
        tl, _ = best_of(lambda: kernels._log_factorial_prefix_loop.py_func(N), 1)
        assert np.allclose(a, b, rtol=1e-12)
        rows.append((f"log prefix N={N} (numpy cumsum)", tj, tp))
        rows.append((f"log prefix N={N} (python loop)", tj, tl))
    print(f"{'case':<44}{'numba s':>12}{'fallback s':>12}{'speedup':>10}")
    for name, tj, tp in rows:
        print(f"{name:<44}{tj:>12.5f}{tp:>12.5f}{tp / tj:>10.1f}")


if __name__ == "__main__":
    main()
