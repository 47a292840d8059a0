#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure Python/numpy fallback.

Covers the three loops that dominate a full enumeration run: canonizing all
leaf-extensions of a parent tree, splitting a tree at its pivot into
component codes, and the brute-force subset enumeration. Run with both
backends importable; selection via TREEPOLY_KERNELS does not matter here
because both are imported directly.

Usage: python benchmarks/bench_kernels.py [--trees N] [--n VERTICES]
"""

import argparse
import random
import time

import numpy as np

from treepoly.kernels import jit, pure
from treepoly.tree import pack_adjacency


def random_packed_tree(rng, n):
    adjacency = [[] for _ in range(n)]
    for i in range(1, n):
        j = rng.randrange(i)
        adjacency[i].append(j)
        adjacency[j].append(i)
    return pack_adjacency([sorted(a) for a in adjacency], n)


def bench(label, fn, args_list, repeat=1):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for args in args_list:
            fn(*args)
    dt = time.perf_counter() - t0
    calls = repeat * len(args_list)
    print(f"  {label:<28} {dt:8.3f}s  ({dt / calls * 1e6:9.1f} us/call)")
    return dt


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trees", type=int, default=200)
    ap.add_argument("--n", type=int, default=19)
    args = ap.parse_args()

    rng = random.Random(42)
    trees = [random_packed_tree(rng, args.n) for _ in range(args.trees)]
    calls = [(off, adj, args.n) for off, adj in trees]

    # warm-up (JIT compilation happens here, not inside the timings)
    jit.child_codes_packed(*calls[0])
    jit.pivot_split_codes(*calls[0])

    print(f"child_codes_packed: all leaf-extensions of {args.trees} trees, n={args.n}")
    t_jit = bench("numba", jit.child_codes_packed, calls, repeat=5)
    t_pure = bench("pure", pure.child_codes_packed, calls)
    print(f"  speedup: {t_pure / (t_jit / 5):.1f}x\n")

    print(f"pivot_split_codes: {args.trees} trees, n={args.n}")
    t_jit = bench("numba", jit.pivot_split_codes, calls, repeat=5)
    t_pure = bench("pure", pure.pivot_split_codes, calls)
    print(f"  speedup: {t_pure / (t_jit / 5):.1f}x\n")

    n_sub = 18
    masks = []
    for off, adj in [random_packed_tree(rng, n_sub) for _ in range(10)]:
        m = np.zeros(n_sub, dtype=np.int64)
        for v in range(n_sub):
            for i in range(off[v], off[v + 1]):
                m[v] |= 1 << int(adj[i])
        masks.append((m, n_sub))
    jit.subset_counts(*masks[0])

    print(f"subset_counts: 10 trees, n={n_sub} (2^{n_sub} subsets each)")
    t_jit = bench("numba", jit.subset_counts, masks)
    t_pure = bench("pure (vectorized numpy)", pure.subset_counts, masks)
    print(f"  speedup: {t_pure / t_jit:.1f}x\n")

    a = np.array([1, 9, 28, 40, 28, 9, 1], dtype=np.int64)
    conv = [(a, a)] * 20000
    jit.convolve_i64(a, a)
    print("convolve_i64: 20000 degree-6 products")
    t_jit = bench("numba", jit.convolve_i64, conv)
    t_pure = bench("pure", pure.convolve_i64, conv)
    print(f"  speedup: {t_pure / t_jit:.1f}x")


if __name__ == "__main__":
    main()
