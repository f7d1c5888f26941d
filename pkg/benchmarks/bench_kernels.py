#!/usr/bin/env python3
"""Benchmark the three kernel backends against each other.

Times pointer doubling, prefix scan, and reachability closure under the
numba, numpy, and scalar backends on growing inputs, then times a full
solve under each engine configuration.  Backends must return identical
results; the script verifies that on every input it times.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats 5] [--seed 7]
"""

import argparse
import statistics
import time

import numpy as np

from popmatch import Engine, PrefInstance, solve_popular
from popmatch.kernels import get_backend

CHAIN_SIZES = (1_000, 10_000, 100_000, 1_000_000)
SCAN_SIZES = (1_000, 10_000, 100_000, 1_000_000)
CLOSURE_SIZES = (32, 64, 128, 256, 512)

# plain-Python loops stop being measurable-in-reasonable-time above these
SCALAR_MAX = {"pointer_double": 20_000, "scan_add": 200_000,
              "reach_closure": 64}


def median_time(fn, arg, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(arg)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def chain_input(rng, n):
    """Random successor array: shuffled chains with sprinkled terminators."""
    order = rng.permutation(n)
    nxt = np.full(n, -1, dtype=np.int64)
    breaks = rng.random(n - 1) < 0.01
    for k in range(n - 1):
        if not breaks[k]:
            nxt[order[k]] = order[k + 1]
    return nxt


def scan_input(rng, n):
    return rng.integers(0, 100, size=n).astype(np.int64)


def closure_input(rng, n):
    return rng.random((n, n)) < (2.0 / n)


def fmt(seconds):
    if seconds is None:
        return "-".rjust(12)
    if seconds < 1e-3:
        return f"{seconds * 1e6:9.1f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:9.2f} ms"
    return f"{seconds:9.2f} s "


def bench_kernel(name, sizes, make_input, backends, rng, repeats):
    print(f"\n{name}")
    print(f"{'n':>10} {'scalar':>12} {'numpy':>12} {'numba':>12} "
          f"{'numba speedup':>14}")
    for n in sizes:
        arg = make_input(rng, n)
        row = {}
        outs = {}
        for bname, backend in backends.items():
            if bname == "scalar" and n > SCALAR_MAX[name]:
                row[bname] = None
                continue
            fn = getattr(backend, name)
            outs[bname] = fn(arg)  # warmup; keeps JIT out of the timings
            row[bname] = median_time(fn, arg, repeats)
        base = next(iter(outs.values()))
        for bname, out in outs.items():
            if isinstance(out, tuple):
                same = all(np.array_equal(a, b) for a, b in zip(out, base))
            else:
                same = np.array_equal(out, base)
            assert same, f"{name} n={n}: {bname} output differs"
        speedup = ""
        if row.get("numba") and row.get("numpy"):
            speedup = f"{row['numpy'] / row['numba']:.1f}x vs numpy"
        print(f"{n:>10} {fmt(row.get('scalar'))} {fmt(row.get('numpy'))} "
              f"{fmt(row.get('numba'))} {speedup:>14}")


def solvable_instance(seed, n):
    """n applicants over n posts, distinct first choices, so a popular
    matching always exists and the full pipeline runs."""
    rng = np.random.default_rng(seed)
    lists = []
    for a in range(1, n + 1):
        rest = rng.choice(n, size=9, replace=False) + 1
        lists.append([a] + [int(p) for p in rest if p != a][:8])
    return PrefInstance.from_lists(lists, n)


def bench_solve(repeats, seed):
    n = 50_000
    print(f"\nend-to-end solve, {n} applicants x {n} posts")
    inst = solvable_instance(seed, n)
    results = {}
    for label, engine_args in (("par/numba", dict(mode="par",
                                                  backend="numba")),
                               ("par/numpy", dict(mode="par",
                                                  backend="numpy")),
                               ("seq/scalar", dict(mode="seq"))):
        solve_popular(inst, Engine(**engine_args))  # warmup
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            results[label] = solve_popular(inst, Engine(**engine_args))
            times.append(time.perf_counter() - t0)
        print(f"  {label:<11} {fmt(statistics.median(times))}")
    assert len(set(results.values())) == 1, "engines disagree on the solution"
    print("  identical solutions across all three: yes")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5,
                    help="timed runs per point, median reported")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    backends = {}
    for name in ("scalar", "numpy", "numba"):
        try:
            backends[name] = get_backend(name)
        except ImportError:
            print(f"backend {name} unavailable, skipping")
    rng = np.random.default_rng(args.seed)

    bench_kernel("pointer_double", CHAIN_SIZES, chain_input, backends, rng,
                 args.repeats)
    bench_kernel("scan_add", SCAN_SIZES, scan_input, backends, rng,
                 args.repeats)
    bench_kernel("reach_closure", CLOSURE_SIZES, closure_input, backends,
                 rng, args.repeats)
    bench_solve(args.repeats, args.seed)


if __name__ == "__main__":
    main()
