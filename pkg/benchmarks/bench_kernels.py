"""Time the compiled and pure kernel backends on the same synthetic graph.

    python benchmarks/bench_kernels.py --n 100000 --avg-degree 8 --repeats 3
"""
import argparse
import time

import numpy as np

from prdense import kernels
from prdense.cores import approx_coreness, exact_coreness
from prdense.framework import RunConfig, run
from prdense.graph import from_edges
from prdense.refine import density_and_load_update, load_peel_order, load_sort_order, new_loads


def synthetic(n, avg_degree, seed):
    """Power-law-ish random graph with a planted dense block."""
    rng = np.random.default_rng(seed)
    m = n * avg_degree // 2
    w = 1.0 / np.arange(1, n + 1) ** 0.6
    u = rng.choice(n, m, p=w / w.sum())
    v = rng.integers(0, n, m)
    k = min(n, 60)
    block = np.array([(i, j) for i in range(k) for j in range(i + 1, k)
                      if rng.random() < 0.7]).reshape(-1, 2)
    pairs = np.vstack([np.column_stack([u, v]), block])
    return from_edges(pairs[pairs[:, 0] != pairs[:, 1]])


def bench(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(g, threads):
    loads = new_loads(g.n)
    for _ in range(3):
        loads, _ = density_and_load_update(g, load_peel_order(g, loads), loads)
    peel = load_peel_order(g, loads)
    return {
        "exact_coreness": lambda: exact_coreness(g),
        "approx_coreness(1.5)": lambda: approx_coreness(g, 1.5),
        "load_peel_order": lambda: load_peel_order(g, loads),
        "load_sort_order": lambda: load_sort_order(loads),
        "density_and_load_update": lambda: density_and_load_update(g, peel, loads, threads),
        "run peel, no pruning, T=5": lambda: run(g, RunConfig(pruning="none", iterations=5,
                                                              threads=threads)),
        "run peel, exact pruning, T=20": lambda: run(g, RunConfig(iterations=20,
                                                                  threads=threads)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=50_000)
    ap.add_argument("--avg-degree", type=int, default=8)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    g = synthetic(args.n, args.avg_degree, args.seed)
    print(f"graph: n={g.n} m={g.m} max_degree={g.max_degree}")
    backends = kernels.available_backends()
    prev = kernels.BACKEND
    table = {}
    for b in backends:
        kernels.use_backend(b)
        for name, fn in cases(g, args.threads).items():
            table.setdefault(name, {})[b] = bench(fn, args.repeats)
    kernels.use_backend(prev)

    width = max(map(len, table))
    print(f"{'case':<{width}}  " + "  ".join(f"{b:>10}" for b in backends)
          + ("     speedup" if len(backends) == 2 else ""))
    for name, row in table.items():
        cols = "  ".join(f"{row[b] * 1e3:>8.1f}ms" for b in backends)
        extra = f"  {row['pure'] / row['compiled']:>9.1f}x" if len(backends) == 2 else ""
        print(f"{name:<{width}}  {cols}{extra}")
    if len(backends) == 1:
        print("compiled backend not built; only the fallback was timed")


if __name__ == "__main__":
    main()
